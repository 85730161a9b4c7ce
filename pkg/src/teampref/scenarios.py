"""
scenarios.py

Named end-to-end reproduction scenarios for the 'repro' subcommand. Each
scenario records a list of checks; it passes iff every check passes.

Created on 17 Oct 2026

@author: teampref contributors
"""

import random
from itertools import product
from logging import getLogger

from teampref.circuits import build_lex_circuit
from teampref.formula import Or, flatten, parse, random_formula
from teampref.globals import LEX, NONSTRICT, RLEX, STRICT
from teampref.helpers import bitstring, int_to_bits
from teampref.prefmodel import (
    entails,
    induce_classical,
    min_states,
    random_model,
    w_circ_star,
    w_pq,
    w_sub,
    w_sup,
)
from teampref.properties import (
    build_corpus,
    check_star,
    check_star_corpus,
    check_system_p,
    check_triangle,
    or_counterexample,
)
from teampref.succinct import (
    olms,
    olms_reduction,
    random_succinct_model,
    succ_entails_generic,
    succ_entails_rlex,
)
from teampref.teams import entails_classical, entails_logical, eval_team, parse_team

log = getLogger(__name__)


class Transcript:
    """
    Transcript class - records named checks and their outcomes.
    """

    def __init__(self, name):
        """
        Constructor
        """

        self.name = name
        self.lines = []
        self.passed = True

    def check(self, description, outcome):
        """
        Record one check.
        """

        outcome = bool(outcome)
        self.passed = self.passed and outcome
        self.lines.append(f"{'ok  ' if outcome else 'FAIL'} {description}")
        log.debug("%s: %s -> %s", self.name, description, outcome)
        return outcome


def confirms_or_violation(model, triple):
    """
    True if phi |~ gamma and psi |~ gamma hold but phi|psi |~ gamma does not.
    """

    phi, psi, gamma = triple
    return (
        entails(model, phi, gamma).holds
        and entails(model, psi, gamma).holds
        and not entails(model, Or(phi, psi), gamma).holds
    )


def dep_atoms(out):
    """
    Team {100, 010} over p q r and its dependence atoms.
    """

    team = parse_team("100,010", ("p", "q", "r"))
    out.check("X |= dep(p ; q)", eval_team(team, parse("dep(p ; q)")))
    out.check("X |= dep(r)", eval_team(team, parse("dep(r)")))
    out.check("X |= dep(p) | dep(p)", eval_team(team, parse("dep(p) | dep(p)")))
    out.check("X |/= dep(p)", not eval_team(team, parse("dep(p)")))
    out.check("X |= dep(q ; p)", eval_team(team, parse("dep(q ; p)")))


def violate_or(out):
    """
    The pq model satisfies p |~ q and ~p |~ q but not p|~p |~ q.
    """

    model = w_pq()
    out.check("p |~ q", entails(model, parse("p"), parse("q")).holds)
    out.check("~p |~ q", entails(model, parse("~p"), parse("q")).holds)
    out.check("p | ~p |/~ q", not entails(model, parse("p | ~p"), parse("q")).holds)
    out.check("min S(p) = [s_11]", min_states(model, parse("p")) == ["s_11"])
    out.check("(triangle) fails", not check_triangle(model).holds)
    report = check_system_p(model, build_corpus(("p", "q"), depth=0, include_dep=False))
    out.check(
        f"System P fails at (Or): {report}",
        not report.holds and report.counterexample[0] == "Or",
    )


def circ_star(out):
    """
    The three-state model over {p} violating (triangle) and (star).
    """

    model = w_circ_star()
    dep_p = parse("dep(p)")
    out.check("dep(p) |~ dep(p)", entails(model, dep_p, dep_p).holds)
    out.check(
        "dep(p) | dep(p) |/~ dep(p)",
        not entails(model, parse("dep(p) | dep(p)"), parse("dep(p)")).holds,
    )
    out.check(
        "min S(p | ~p) = [s_0_1]", min_states(model, parse("p | ~p")) == ["s_0_1"]
    )
    out.check("(triangle) fails", not check_triangle(model).holds)
    star = check_star(model, parse("p"), parse("~p"))
    out.check("(star) fails for p, ~p", not star.holds)
    corpus = build_corpus(("p",), depth=2, include_dep=False)
    out.check("System P holds on PL formulas", check_system_p(model, corpus).holds)
    triple = or_counterexample(model)
    out.check(
        "dependence formulas violate (Or)",
        triple is not None and confirms_or_violation(model, triple),
    )


def pdl_examples(out):
    """
    The subteam model gives flattened classical entailment, the superteam
    model gives team-logical entailment.
    """

    for domain in (("p",), ("p", "q")):
        corpus = build_corpus(domain, depth=1 if len(domain) == 1 else 0)
        sub, sup = w_sub(domain), w_sup(domain)
        sub_ok = sup_ok = True
        for phi, psi in product(corpus, repeat=2):
            classical = entails_classical(flatten(phi), flatten(psi), domain)
            sub_ok = sub_ok and entails(sub, phi, psi).holds == classical
            logical = entails_logical(phi, psi, domain)
            sup_ok = sup_ok and entails(sup, phi, psi).holds == logical
        names = " ".join(domain)
        out.check(f"subteam model = classical entailment over {names}", sub_ok)
        out.check(f"superteam model = team entailment over {names}", sup_ok)


def triangle_flattening(out, seed=7, rounds=30):
    """
    For models with (triangle), entailment equals classical entailment of
    the flattenings in the induced classical model.
    """

    rng = random.Random(seed)
    corpus = build_corpus(("p",), depth=2)
    agree = True
    for _ in range(rounds):
        model = random_model(("p",), rng, n_states=4, triangle=True)
        if not check_triangle(model).holds:
            continue
        classical = induce_classical(model)
        for phi, psi in product(corpus, repeat=2):
            agree = agree and (
                entails(model, phi, psi).holds
                == entails(classical, flatten(phi), flatten(psi)).holds
            )
    out.check(f"flattening agreement on {rounds} random models", agree)


def theorem_main(out, seed=11, rounds=40):
    """
    (triangle) iff (star) iff System P on random models over {p}, with a
    confirmed (Or) counterexample whenever (triangle) fails.
    """

    rng = random.Random(seed)
    corpus = build_corpus(("p",), depth=1, include_theta=True)
    consistent = confirmed = True
    for k in range(rounds):
        model = random_model(
            ("p",), rng, n_states=4, allow_empty=bool(k % 2), triangle=k % 3 == 0
        )
        triangle = check_triangle(model).holds
        star = check_star_corpus(model, corpus).holds
        system_p = check_system_p(model, corpus).holds
        consistent = consistent and triangle == star == system_p
        if not triangle:
            triple = or_counterexample(model)
            confirmed = confirmed and confirms_or_violation(model, triple)
    out.check(f"(triangle) = (star) = System P on {rounds} random models", consistent)
    out.check("every (triangle) failure yields an (Or) violation", confirmed)


def olms_scenario(out, seed=3, rounds=60):
    """
    olms(phi) is the complement of succinct entailment on its reduction,
    and the rlex algorithm agrees with exhaustive search.
    """

    rng = random.Random(seed)
    sound = agree = True
    for _ in range(rounds):
        width = rng.randint(1, 5)
        domain = tuple(f"x{i}" for i in range(1, width + 1))
        phi = random_formula(domain, rng, depth=3, include_dep=False)
        model, lhs, rhs = olms_reduction(phi, domain)
        generic = succ_entails_generic(model, lhs, rhs)
        sound = sound and olms(phi, domain) == (not generic.holds)
        agree = agree and succ_entails_rlex(model, lhs, rhs).holds == generic.holds
    out.check(f"olms = not entails on {rounds} reductions", sound)
    out.check("rlex algorithm = exhaustive search", agree)
    model = random_succinct_model("classical", 3, ("p", "q"), rng)
    verdict = succ_entails_generic(model, parse("p"), parse("p"))
    out.check("random succinct model is usable", verdict.holds)


def lex_circuit(out):
    """
    Lex circuits against string comparison.
    """

    for width in (1, 2, 3):
        strict = build_lex_circuit(width, LEX, STRICT)
        loose = build_lex_circuit(width, LEX, NONSTRICT)
        reverse = build_lex_circuit(width, RLEX, STRICT)
        ok = True
        for a, b in product(range(1 << width), repeat=2):
            left = bitstring(int_to_bits(a, width))
            right = bitstring(int_to_bits(b, width))
            bits = int_to_bits(a, width) + int_to_bits(b, width)
            ok = ok and strict.evaluate(bits) == ((left < right),)
            ok = ok and loose.evaluate(bits) == ((left <= right),)
            ok = ok and reverse.evaluate(bits) == ((right < left),)
        out.check(f"width {width}: lex, nonstrict lex and rlex match string order", ok)


SCENARIOS = {
    "dep-atoms": dep_atoms,
    "violate-or": violate_or,
    "circ-star": circ_star,
    "pdl-examples": pdl_examples,
    "triangle-flattening": triangle_flattening,
    "theorem-main": theorem_main,
    "olms": olms_scenario,
    "lex-circuit": lex_circuit,
}


def run_scenario(name):
    """
    Run a named scenario and return its Transcript.

    :raises KeyError: if there is no scenario of that name
    """

    out = Transcript(name)
    SCENARIOS[name](out)
    return out
