"""
test_properties.py

Corpora, (triangle), (star), System C / System P and the (Or) counterexamples.

Created on 17 Oct 2026

@author: teampref contributors
"""

import pytest

from teampref.formula import BOT, TOP, Dep, NegVar, Or, Var, size_bounded_formula
from teampref.prefmodel import new_model, random_model, w_sup
from teampref.properties import (
    PropertyReport,
    build_corpus,
    check_or,
    check_star,
    check_star_corpus,
    check_system_c,
    check_system_p,
    check_triangle,
    dagger_pair,
    dependence_atoms,
    nontrivial_covers,
    or_counterexample,
    triangle_failures,
)
from teampref.scenarios import confirms_or_violation
from teampref.teams import Team, all_teams, eval_team, parse_team

P = ("p",)
PQ = ("p", "q")


def test_corpus_level_zero():
    corpus = build_corpus(P, depth=0, include_dep=False)
    assert list(corpus) == [TOP, BOT, Var("p"), NegVar("p")]
    assert len(build_corpus(P, depth=0)) == 5


def test_corpus_over_one_variable_is_saturated():
    # five downward closed model sets exist over {p}
    assert len(build_corpus(P, depth=2)) == 5
    assert len(build_corpus(P, depth=1, include_theta=True)) == 5


def test_corpus_without_dedupe_keeps_everything():
    corpus = build_corpus(P, depth=0, include_dep=False, extra=[TOP], dedupe=False)
    assert corpus[-1] is TOP
    assert len(corpus) == 5


def test_corpus_is_deterministic():
    first = build_corpus(PQ, depth=1, n_random=5, seed=3)
    second = build_corpus(PQ, depth=1, n_random=5, seed=3)
    assert list(first) == list(second)
    assert first.model_sets == second.model_sets
    assert len(set(first.model_sets)) == len(first)


def test_dependence_atoms():
    atoms = dependence_atoms(PQ)
    assert atoms == [Dep((), "p"), Dep(("q",), "p"), Dep((), "q"), Dep(("p",), "q")]


def test_triangle(sub_p, circ_model, pq_model):
    assert check_triangle(sub_p).holds
    report = check_triangle(circ_model)
    assert not report.holds
    assert report.counterexample == ("s_0_1",)
    assert not check_triangle(pq_model).holds
    assert triangle_failures(w_sup(P)) == ["s_0_1"]


def test_strict_triangle():
    model = new_model(P, ["e", "x"], {"e": Team(P, 0), "x": Team(P, 3)}, [("e", "x")])
    assert check_triangle(model).holds
    assert not check_triangle(model, strict=True).holds


def test_star(sub_p, circ_model):
    report = check_star(circ_model, Var("p"), NegVar("p"))
    assert not report.holds
    assert report.counterexample == (Var("p"), NegVar("p"), "s_0_1")
    assert check_star(sub_p, Var("p"), NegVar("p")).holds


def test_star_corpus(sub_p, circ_model):
    corpus = build_corpus(P, depth=1)
    assert check_star_corpus(sub_p, corpus).holds
    assert not check_star_corpus(circ_model, corpus).holds


def test_system_c_on_random_models(rng):
    corpus = build_corpus(P, depth=2)
    for k in range(100):
        model = random_model(P, rng, n_states=4, edge_prob=0.4, allow_empty=bool(k % 2))
        assert check_system_c(model, corpus).holds
    corpus = build_corpus(PQ, depth=0)
    for _ in range(10):
        model = random_model(PQ, rng, n_states=6, edge_prob=0.4)
        assert check_system_c(model, corpus).holds


def test_system_p_fails_on_pq(pq_model):
    corpus = build_corpus(PQ, depth=0, include_dep=False)
    assert check_system_c(pq_model, corpus).holds
    report = check_system_p(pq_model, corpus)
    assert not report.holds
    assert report.counterexample == ("Or", Var("p"), NegVar("p"), Var("q"))
    assert not check_or(pq_model, corpus).holds


def test_circ_star_on_classical_formulas(circ_model):
    corpus = build_corpus(P, depth=2, include_dep=False)
    assert check_system_p(circ_model, corpus).holds
    theta_corpus = build_corpus(P, depth=0, include_theta=True)
    assert not check_system_p(circ_model, theta_corpus).holds


def test_or_counterexample(sub_p, circ_model, pq_model):
    assert or_counterexample(sub_p) is None
    triple = or_counterexample(circ_model)
    bounded = size_bounded_formula(parse_team("0,1", P), 1)
    assert triple == (bounded, bounded, bounded)
    assert confirms_or_violation(circ_model, triple)
    assert confirms_or_violation(pq_model, or_counterexample(pq_model))


@pytest.mark.parametrize("domain, depth", [(P, 1), (PQ, 0)])
def test_triangle_iff_system_p(rng, domain, depth):
    corpus = build_corpus(domain, depth=depth, include_theta=True)
    for _ in range(200):
        model = random_model(domain, rng, n_states=4, edge_prob=0.5)
        triangle = check_triangle(model).holds
        assert check_star_corpus(model, corpus).holds == triangle
        assert check_system_p(model, corpus).holds == triangle
        if not triangle:
            assert confirms_or_violation(model, or_counterexample(model))


@pytest.mark.parametrize("domain, depth", [(P, 1), (PQ, 0)])
def test_triangle_models_satisfy_system_p(rng, domain, depth):
    corpus = build_corpus(domain, depth=depth, include_theta=True)
    for _ in range(20):
        model = random_model(domain, rng, n_states=4, triangle=True)
        assert check_system_p(model, corpus).holds


def test_dagger_pair():
    team = parse_team("00,11", PQ)
    assert len(nontrivial_covers(team)) == 2
    first, second = dagger_pair(team)
    assert eval_team(team, Or(first, second))
    assert not eval_team(team, first)
    assert not eval_team(team, second)
    with pytest.raises(ValueError):
        dagger_pair(parse_team("01", PQ))


@pytest.mark.parametrize("domain", [P, PQ])
def test_dagger_pairs_for_every_cover(domain):
    for team in all_teams(domain):
        if len(team) < 2:
            continue
        covers = nontrivial_covers(team)
        assert covers
        for cover in covers:
            first, second = dagger_pair(team, cover)
            assert eval_team(team, Or(first, second)), (team, cover)
            assert not eval_team(team, first) and not eval_team(team, second)


def test_report_text():
    assert str(PropertyReport("triangle", True)) == "PROPERTY triangle HOLDS"
    report = PropertyReport("star", False, (Var("p"), NegVar("p"), "s_0_1"))
    assert str(report) == "PROPERTY star FAILS [p] [~p] s_0_1"
