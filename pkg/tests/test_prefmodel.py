"""
test_prefmodel.py

Preferential models, minimal states, entailment, fixtures and model files.

Created on 17 Oct 2026

@author: teampref contributors
"""

import random
from itertools import product

import pytest

from teampref.exceptions import DomainError, ModelError, NotFlatError, OrderError
from teampref.formula import BOT, TOP, flatten, parse
from teampref.globals import CLASSICAL
from teampref.prefmodel import (
    entails,
    entails_definitional,
    format_model,
    induce_classical,
    load_model,
    min_states,
    new_model,
    parse_model,
    random_model,
    state_name,
    w_sub,
    w_sup,
)
from teampref.properties import build_corpus, check_triangle
from teampref.teams import Team, entails_classical, entails_logical, parse_team

P = ("p",)
PQ = ("p", "q")
PQRS = ("p", "q", "r", "s")


def _three_chain():
    labels = {s: parse_team("1", P) for s in "abc"}
    return new_model(P, ["a", "b", "c"], labels, [("a", "b"), ("b", "c")])


def test_single_state():
    model = new_model(P, ["s"], {"s": parse_team("1", P)})
    assert len(model) == 1
    assert min_states(model, TOP) == ["s"]


def test_cycle_rejected():
    labels = {"a": parse_team("1", P), "b": parse_team("0", P)}
    with pytest.raises(OrderError, match="cycle"):
        new_model(P, ["a", "b"], labels, [("a", "b"), ("b", "a")])
    with pytest.raises(OrderError):
        new_model(P, ["a", "b"], labels, [("a", "a")])


def test_transitive_closure():
    model = _three_chain()
    assert model.precedes("a", "c")
    assert not model.precedes("c", "a")


def test_validation_errors():
    labels = {"a": parse_team("1", P)}
    with pytest.raises(ModelError):
        new_model(P, ["a"], labels, [("a", "z")])
    with pytest.raises(ModelError):
        new_model(P, ["a", "b"], labels)
    with pytest.raises(DomainError):
        new_model(PQ, ["a"], labels)
    with pytest.raises(ModelError):
        new_model(P, ["a", "a"], labels)


def test_min_states(pq_model):
    assert min_states(pq_model, parse("p")) == ["s_11"]
    assert min_states(pq_model, parse("p | ~p")) == ["s_00_11"]


def test_min_states_falsum():
    labels = {"e": Team(P, 0), "x": parse_team("1", P), "y": Team(P, 0)}
    model = new_model(P, ["e", "x", "y"], labels, [("e", "y")])
    assert min_states(model, BOT) == ["e"]
    assert min_states(_three_chain(), BOT) == []


def test_min_states_unordered():
    model = new_model(P, ["a", "b"], {"a": parse_team("1", P), "b": parse_team("0", P)})
    assert min_states(model, TOP) == ["a", "b"]


def test_pq_entailments(pq_model):
    assert len(pq_model) == 15
    assert entails(pq_model, parse("p"), parse("q")).holds
    assert entails(pq_model, parse("~p"), parse("q")).holds
    verdict = entails(pq_model, parse("p | ~p"), parse("q"))
    assert not verdict.holds
    assert verdict.witness == "s_00_11"
    assert verdict.minimal_states == ("s_00_11",)


def test_circ_star_entailments(circ_model):
    assert entails(circ_model, parse("dep(p)"), parse("dep(p)")).holds
    verdict = entails(circ_model, parse("dep(p) | dep(p)"), parse("dep(p)"))
    assert not verdict.holds
    assert verdict.witness == "s_0_1"
    assert min_states(circ_model, parse("p | ~p")) == ["s_0_1"]


def test_reflexivity(pq_model, circ_model):
    for model in (pq_model, circ_model):
        for phi in build_corpus(model.domain, depth=0):
            assert entails(model, phi, phi).holds


def test_verdict_invariants(rng):
    corpus = build_corpus(PQ, depth=0)
    for _ in range(20):
        model = random_model(PQ, rng, n_states=6, allow_empty=True)
        for phi, psi in product(corpus, repeat=2):
            verdict = entails(model, phi, psi)
            assert verdict.holds == (verdict.witness is None)
            assert verdict == entails_definitional(model, phi, psi)


def test_min_nonempty_when_extension_nonempty(rng):
    corpus = build_corpus(PQ, depth=1)
    for _ in range(20):
        model = random_model(PQ, rng, n_states=8, edge_prob=0.5)
        for phi in corpus:
            if model.extension(phi):
                assert min_states(model, phi)


def test_w_sub_and_w_sup(sub_p):
    assert sub_p.states == ("s_0", "s_1", "s_0_1")
    assert sub_p.precedes("s_1", "s_0_1")
    assert not sub_p.precedes("s_0", "s_1")
    sup = w_sup(P)
    assert sup.precedes("s_0_1", "s_1")
    assert entails(sup, parse("p"), parse("dep(p)")).holds
    assert entails(w_sub(PQ), parse("dep(p ; q) & p"), parse("p")).holds


def test_subteam_model_over_four_variables():
    model = w_sub(PQRS)
    assert len(model) == 65535
    assert len(model.reduction_edges()) == 16 * 2**15 - 16
    assert model.precedes("s_0000", state_name(Team.full(PQRS)))
    assert not model.precedes("s_0000", "s_0001")
    expected = ["s_1100", "s_1101", "s_1110", "s_1111"]
    assert min_states(model, parse("p & q")) == expected
    assert entails(model, parse("p | ~p"), parse("dep(p)")).holds


def test_superteam_model_over_four_variables():
    model = w_sup(PQRS)
    assert min_states(model, TOP) == [state_name(Team.full(PQRS))]
    verdict = entails(model, parse("~p & ~q"), parse("~r"))
    assert verdict.minimal_states == ("s_0000_0001_0010_0011",)
    assert verdict.witness == "s_0000_0001_0010_0011"


def test_order_is_kept_as_edges(sub_p):
    model = w_sub(PQ)
    assert model.graph.number_of_edges() == len(model.reduction_edges())
    assert len(model.order_pairs()) > model.graph.number_of_edges()
    assert sub_p.below("s_0_1") == ["s_0", "s_1"]
    assert sub_p.order_pairs() == [("s_0", "s_0_1"), ("s_1", "s_0_1")]


@pytest.mark.parametrize("domain, depth", [(P, 2), (PQ, 0)])
def test_subteam_model_is_flattened_classical_entailment(domain, depth):
    model = w_sub(domain)
    for phi, psi in product(build_corpus(domain, depth=depth), repeat=2):
        expected = entails_classical(flatten(phi), flatten(psi), domain)
        assert entails(model, phi, psi).holds == expected, (phi, psi)


@pytest.mark.parametrize("domain, depth", [(P, 2), (PQ, 0)])
def test_superteam_model_is_team_entailment(domain, depth):
    model = w_sup(domain)
    for phi, psi in product(build_corpus(domain, depth=depth), repeat=2):
        assert entails(model, phi, psi).holds == entails_logical(phi, psi, domain)


def test_induce_classical(sub_p):
    classical = induce_classical(sub_p)
    assert classical.mode == CLASSICAL
    assert classical.states == ("s_0", "s_1")
    assert classical.order_pairs() == []
    with pytest.raises(NotFlatError):
        entails(classical, parse("dep(p)"), TOP)


def test_induce_classical_degenerate():
    model = new_model(PQ, ["a"], {"a": parse_team("00,11", PQ)})
    assert len(induce_classical(model)) == 0
    model = _three_chain()
    assert len(induce_classical(model).order_pairs()) == 3


@pytest.mark.parametrize("domain, depth", [(P, 2), (PQ, 0)])
def test_triangle_flattening(rng, domain, depth):
    corpus = build_corpus(domain, depth=depth, n_random=10, seed=1)
    for _ in range(40):
        model = random_model(domain, rng, n_states=4, triangle=True)
        assert check_triangle(model).holds
        classical = induce_classical(model)
        for phi, psi in product(corpus, repeat=2):
            assert (
                entails(model, phi, psi).holds
                == entails(classical, flatten(phi), flatten(psi)).holds
            )


def test_state_name():
    assert state_name(parse_team("01,11", PQ)) == "s_01_11"
    assert state_name(Team(PQ, 0)) == "s_empty"


def test_random_model_is_seeded():
    first = format_model(random_model(PQ, random.Random(3)))
    assert first == format_model(random_model(PQ, random.Random(3)))


MODEL_TEXT = """\
# two states over p q
vars p q
state s1 = 10,01
state s2 = 11
state s3 = -
order s1 < s2   # s1 preferred
"""


def test_parse_model():
    model = parse_model(MODEL_TEXT)
    assert model.domain == PQ
    assert model.states == ("s1", "s2", "s3")
    assert model.label("s1") == parse_team("01,10", PQ)
    assert len(model.label("s3")) == 0
    assert model.precedes("s1", "s2")


def test_model_file_roundtrip(tmp_path, pq_model):
    text = format_model(pq_model)
    path = tmp_path / "pq.model"
    path.write_text(text, encoding="utf-8")
    again = load_model(str(path))
    assert format_model(again) == text
    assert again.order_pairs() == pq_model.order_pairs()


def test_classical_model_file():
    text = format_model(induce_classical(w_sub(P)))
    assert "mode classical" in text
    assert parse_model(text).mode == CLASSICAL


@pytest.mark.parametrize(
    "text",
    [
        "state s = 1\nvars p",
        "vars p\nstate s = 12",
        "vars p\nstate s 1",
        "vars p\nstate a = 1\norder a < b",
        "vars p\nstate a = 1\nstate b = 0\norder a < b\norder b < a",
        "",
    ],
)
def test_malformed_model_files(text):
    with pytest.raises((ModelError, OrderError, DomainError)):
        parse_model(text)
