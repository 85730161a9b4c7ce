"""
test_succinct.py

SAT search, lexicographic maxima, OLMS and entailment over succinct models.

Created on 17 Oct 2026

@author: teampref contributors
"""

import random
from itertools import product

import pytest
from hypothesis import given

from strategies import formulas
from teampref.circuits import (
    CircuitBuilder,
    build_lex_circuit,
    identity_circuit,
    lex_inputs,
)
from teampref.exceptions import GuardError, ModelError, NotFlatError, OrderError
from teampref.formula import BOT, TOP, And, Var, parse, random_formula
from teampref.globals import CLASSICAL, NONSTRICT, ORDER_RLEX, RLEX, TEAM, ZERO_FIRST
from teampref.prefmodel import entails, random_model
from teampref.succinct import (
    SatOracle,
    SuccinctModel,
    ent_pdl,
    expand,
    lexmax_model,
    load_succinct_model,
    model_checking_reduction,
    natural_domain,
    olms,
    olms_reduction,
    random_succinct_model,
    sat_oracle,
    save_succinct_model,
    singleton_team_reduction,
    substitute,
    succ_entails,
    succ_entails_generic,
    succ_entails_rlex,
)
from teampref.teams import Valuation, all_teams, eval_classical, eval_team

X12 = ("x1", "x2")
PQ = ("p", "q")
PQR = ("p", "q", "r")


def _xs(width):
    return tuple(f"x{i}" for i in range(1, width + 1))


def test_sat_oracle_examples():
    result = sat_oracle(parse("x1 | x2"), X12)
    assert result.satisfiable
    assert result.model == Valuation.parse("01", X12)
    assert not sat_oracle(parse("x1 & ~x1"), X12).satisfiable
    assert sat_oracle(TOP, X12).model == Valuation.parse("00", X12)
    with pytest.raises(NotFlatError):
        sat_oracle(parse("dep(x1)"), X12)


@given(formulas(PQR, flat=True, max_leaves=10))
def test_sat_oracle_matches_truth_table(phi):
    result = sat_oracle(phi, PQR)
    expected = any(eval_classical(Valuation.from_int(v, PQR), phi) for v in range(8))
    assert result.satisfiable == expected
    if result.satisfiable:
        assert eval_classical(result.model, phi)


def test_substitute():
    assert substitute(parse("p & ~q"), "q", 1) == And(Var("p"), BOT)
    assert substitute(parse("p & ~q"), "p", 1) == parse("T & ~q")
    with pytest.raises(NotFlatError):
        substitute(parse("dep(p) & q"), "q", 0)


@pytest.mark.parametrize(
    "text, expected",
    [("x1 | x2", "11"), ("~x1 & x2", "01"), ("~x1 | ~x2", "10"), ("x1 & ~x1", None)],
)
def test_lexmax_model(text, expected):
    oracle = SatOracle(X12)
    best = lexmax_model(parse(text), X12, oracle=oracle)
    assert oracle.calls == 2
    if expected is None:
        assert best is None
    else:
        assert best == Valuation.parse(expected, X12)


def test_lexmin_model():
    assert lexmax_model(parse("x1 | x2"), X12, ZERO_FIRST) == Valuation.parse("01", X12)


def test_lexmax_is_maximal(rng):
    domain = _xs(5)
    for _ in range(100):
        phi = random_formula(domain, rng, depth=3, include_dep=False)
        models = [
            v for v in range(32) if eval_classical(Valuation.from_int(v, domain), phi)
        ]
        best = lexmax_model(phi, domain)
        assert (best.value if best else None) == (max(models) if models else None)


def test_natural_domain():
    assert natural_domain(parse("x10 | x2 & y")) == ("x2", "x10", "y")


def test_olms_examples():
    assert olms(parse("x1 | x2"))
    assert not olms(parse("x1 & ~x2"))
    assert not olms(parse("x1 & ~x1"))
    assert not olms(TOP)


def test_olms_reduction_witness():
    model, phi, gamma = olms_reduction(parse("x1 | x2"))
    verdict = succ_entails_generic(model, phi, gamma)
    assert not verdict.holds
    assert verdict.witness == "s11"
    assert verdict.minimal_states == ("s11",)
    assert succ_entails_rlex(model, phi, gamma) == verdict


def test_vacuous_entailment():
    model, _, gamma = olms_reduction(parse("x1 | x2"))
    verdict = succ_entails_generic(model, BOT, gamma)
    assert verdict.holds and verdict.minimal_states == ()
    assert succ_entails_rlex(model, parse("x1 & ~x1"), gamma).holds


def test_rlex_example():
    model, _, _ = olms_reduction(parse("x1 | x2"))
    verdict = succ_entails(model, parse("~x2"), parse("x2"), algo=ORDER_RLEX)
    assert not verdict.holds
    assert verdict.witness == "s10"


def test_olms_reduction_is_complement(rng):
    for case in range(200):
        domain = _xs(1 + case % 8)
        phi = random_formula(domain, rng, depth=3, include_dep=False)
        model, phi, gamma = olms_reduction(phi, domain)
        oracle = SatOracle(domain)
        verdict = succ_entails_rlex(model, phi, gamma, oracle)
        assert oracle.calls == len(domain)
        assert verdict.holds == (not olms(phi, domain))
        if len(domain) <= 5:
            assert succ_entails_generic(model, phi, gamma) == verdict


def test_rlex_matches_generic(rng):
    for case in range(500):
        # every 50th case is 7 or 8 bits wide
        width = 7 + case // 50 % 2 if case % 50 == 0 else 1 + case % 6
        domain = _xs(width)
        phi = random_formula(domain, rng, depth=3, include_dep=False)
        psi = random_formula(domain, rng, depth=2, include_dep=False)
        model, _, _ = olms_reduction(phi, domain)
        expected = succ_entails_generic(model, phi, psi)
        assert succ_entails_rlex(model, phi, psi) == expected


def test_singleton_team_reduction(rng):
    for case in range(40):
        domain = _xs(1 + case % 3)
        phi = random_formula(domain, rng, depth=2, include_dep=False)
        team_model, _, gamma = singleton_team_reduction(phi, domain)
        classical_model, _, _ = olms_reduction(phi, domain)
        assert (
            succ_entails_generic(team_model, phi, gamma)
            == succ_entails_generic(classical_model, phi, gamma)
        )
        verdict = succ_entails_generic(team_model, phi, gamma)
        assert verdict.holds == (not olms(phi, domain))


def test_expand_total_order():
    model, _, _ = olms_reduction(parse("x1 | x2"))
    explicit = expand(model)
    assert explicit.states == ("s00", "s01", "s10", "s11")
    assert len(explicit.order_pairs()) == 6
    assert explicit.precedes("s11", "s00")
    assert explicit.mode == CLASSICAL


def test_expand_without_relevant_states():
    inputs = lex_inputs(2, "s")
    builder = CircuitBuilder(inputs)
    labels = builder.build([builder.const(0, "def")] + inputs)
    order = build_lex_circuit(2, RLEX, with_def=True)
    model = SuccinctModel(CLASSICAL, 2, X12, labels, order)
    assert len(expand(model)) == 0
    assert succ_entails_generic(model, TOP, BOT).holds


def test_expand_rejects_reflexive_order():
    order = build_lex_circuit(2, strictness=NONSTRICT, with_def=True)
    labels = identity_circuit(lex_inputs(2, "s"))
    model = SuccinctModel(CLASSICAL, 2, X12, labels, order)
    with pytest.raises(OrderError, match="strict partial order"):
        expand(model)


def _order_circuit(width, pairs):
    first, second = lex_inputs(width, "a"), lex_inputs(width, "b")
    builder = CircuitBuilder(first + second)
    terms = []
    for low, high in pairs:
        bits = [int(ch) for ch in low + high]
        wires = [
            wire if bit else builder.not_(wire)
            for wire, bit in zip(first + second, bits)
        ]
        terms.append(builder.and_all(wires))
    return builder.build([builder.const(1, "def"), builder.or_all(terms, "lt")])


def test_expand_rejects_intransitive_order():
    labels = identity_circuit(lex_inputs(2, "s"))
    order = _order_circuit(2, [("00", "01"), ("01", "10")])
    model = SuccinctModel(CLASSICAL, 2, X12, labels, order)
    with pytest.raises(OrderError, match="not transitive"):
        expand(model)
    order = _order_circuit(2, [("00", "01"), ("01", "10"), ("00", "10")])
    model = SuccinctModel(CLASSICAL, 2, X12, labels, order)
    phi, psi = parse("~x2"), parse("~x1")
    verdict = succ_entails_generic(model, phi, psi)
    assert verdict.holds and verdict.minimal_states == ("s00",)
    assert entails(expand(model), phi, psi) == verdict


@pytest.mark.parametrize("mode", [CLASSICAL, TEAM])
def test_generic_matches_expansion(mode):
    rng = random.Random(41)
    for _ in range(500):
        model = random_succinct_model(mode, rng.randint(1, 3), PQ, rng)
        explicit = expand(model)
        for _ in range(2):
            phi = random_formula(PQ, rng, include_dep=mode == TEAM)
            psi = random_formula(PQ, rng, include_dep=mode == TEAM)
            assert succ_entails_generic(model, phi, psi) == entails(explicit, phi, psi)


def test_random_succinct_model_labels():
    rng = random.Random(5)
    model = random_succinct_model(CLASSICAL, 3, PQ, rng)
    for index in model.relevant():
        assert len(model.label(index)) == 1
        assert not model.precedes(index, index)


def test_rlex_errors():
    rng = random.Random(2)
    with pytest.raises(ModelError):
        succ_entails_rlex(random_succinct_model(CLASSICAL, 2, X12, rng), TOP, TOP)
    team_model, _, _ = singleton_team_reduction(parse("x1"), ("x1",))
    with pytest.raises(ModelError):
        succ_entails_rlex(team_model, TOP, TOP)


def test_ent_pdl_matches_entails(rng):
    for _ in range(20):
        model = random_model(PQ, rng, n_states=6, allow_empty=True)
        for _ in range(10):
            phi, psi = random_formula(PQ, rng), random_formula(PQ, rng)
            assert ent_pdl(model, phi, psi) == entails(model, phi, psi)


def test_model_checking_reduction():
    for text in ("dep(p ; q)", "p | dep(q)", "dep(p) | dep(p)", "~p & q"):
        phi = parse(text)
        for team in all_teams(PQ):
            model, top, goal = model_checking_reduction(team, phi)
            assert entails(model, top, goal).holds == eval_team(team, phi)


def test_guards():
    order = build_lex_circuit(17, RLEX, with_def=True)
    domain = _xs(17)
    labels = identity_circuit(lex_inputs(17, "s"))
    model = SuccinctModel(CLASSICAL, 17, domain, labels, order)
    with pytest.raises(GuardError):
        model.check_guards()
    small, _, _ = olms_reduction(parse("x1 | x2"))
    with pytest.raises(GuardError):
        succ_entails_generic(small, TOP, TOP, max_m_classical=1)
    team_model = random_succinct_model(TEAM, 1, ("a", "b", "c", "d"), random.Random(0))
    with pytest.raises(GuardError):
        expand(team_model)


def test_arity_errors():
    order = build_lex_circuit(2, RLEX, with_def=True)
    with pytest.raises(ModelError):
        SuccinctModel(CLASSICAL, 2, X12, identity_circuit(lex_inputs(3, "s")), order)
    with pytest.raises(ModelError):
        SuccinctModel(TEAM, 2, X12, identity_circuit(lex_inputs(2, "s")), order)
    with pytest.raises(ModelError):
        SuccinctModel("fuzzy", 2, X12, identity_circuit(lex_inputs(2, "s")), order)


def test_save_and_load(tmp_path):
    model, _, _ = olms_reduction(parse("x1 | x2 | x3"))
    path = tmp_path / "olms.succ"
    save_succinct_model(model, str(path))
    assert (tmp_path / "olms.labels.net").exists()
    again = load_succinct_model(str(path))
    assert again.order_kind == ORDER_RLEX
    assert again.domain == model.domain
    for phi, psi in product(["x1", "~x3", "x2 | ~x1"], repeat=2):
        expected = succ_entails_generic(model, parse(phi), parse(psi))
        assert succ_entails_generic(again, parse(phi), parse(psi)) == expected
        assert succ_entails_rlex(again, parse(phi), parse(psi)) == expected


def test_load_errors(tmp_path):
    path = tmp_path / "bad.succ"
    path.write_text(
        "succinct classical m=2 vars x1 x2\nlabels bad.labels.net\n", encoding="utf-8"
    )
    with pytest.raises(ModelError, match="order"):
        load_succinct_model(str(path))
    path.write_text("succinct fuzzy m=2 vars x1\n", encoding="utf-8")
    with pytest.raises(ModelError, match="line 1"):
        load_succinct_model(str(path))
