"""
properties.py

Verifiers for the (triangle) and (star) properties and for the rules of
System C and System P over finite formula corpora, plus the constructive
(Or) counterexample for models violating (triangle).

A corpus stands in for "all formulas": it holds T, F, the literals, and
optionally all dependence atoms, theta and every Theta_X, combined with
& and | up to a depth bound and deduplicated by team-model set.

Created on 17 Oct 2026

@author: teampref contributors
"""

import random
from dataclasses import dataclass, field
from itertools import product
from logging import getLogger

from teampref.exceptions import DomainError, NotFlatError
from teampref.formula import (
    BOT,
    TOP,
    And,
    Dep,
    NegVar,
    Or,
    Var,
    constancy_conjunction,
    is_flat,
    random_formula,
    size_bounded_formula,
    theta_of_team,
)
from teampref.globals import (
    CLASSICAL,
    CORPUS_DEPTH,
    MAX_VARS,
    OR_RULE,
    STAR,
    SYSTEM_C,
    SYSTEM_P,
    TRIANGLE,
)
from teampref.helpers import check_guard, iter_bits, popcount, submasks
from teampref.teams import Team, model_masks

log = getLogger(__name__)

RULES_C = ("Ref", "LLE", "RW", "Cut", "CM")
RULE_OR = "Or"


def model_set(phi, domain):
    """
    Team-model set of phi as a mask over team masks.
    """

    return sum(1 << m for m in model_masks(phi, domain))


def _or_models(left, right):
    result = 0
    for y in iter_bits(left):
        for z in iter_bits(right):
            result |= 1 << (y | z)
    return result


@dataclass
class Corpus:
    """
    Corpus class - an ordered, finite list of formulas over a domain,
    with their team-model sets.
    """

    domain: tuple
    formulas: tuple
    depth: int = 0
    seed: int = 0
    include_theta: bool = False
    include_dep: bool = True
    model_sets: tuple = field(default=None, repr=False)

    def __post_init__(self):
        self.domain = tuple(self.domain)
        self.formulas = tuple(self.formulas)
        check_guard(len(self.domain), MAX_VARS, "|N|")
        if self.model_sets is None:
            self.model_sets = tuple(
                model_set(phi, self.domain) for phi in self.formulas
            )

    def __len__(self):
        return len(self.formulas)

    def __iter__(self):
        return iter(self.formulas)

    def __getitem__(self, i):
        return self.formulas[i]


def dependence_atoms(domain):
    """
    Every dep(A ; b) with A a subset of N without b, determinants in domain order.
    """

    atoms = []
    for target in domain:
        others = [name for name in domain if name != target]
        for mask in range(1 << len(others)):
            chosen = tuple(name for k, name in enumerate(others) if mask >> k & 1)
            atoms.append(Dep(chosen, target))
    return atoms


def build_corpus(
    domain,
    depth=CORPUS_DEPTH,
    include_theta=False,
    include_dep=True,
    seed=0,
    extra=(),
    n_random=0,
    dedupe=True,
    max_vars=MAX_VARS,
):
    """
    Deterministic formula corpus.

    Level 0 holds T, F, the literals and (with include_dep) every
    dependence atom and theta. Each further level adds the conjunctions
    and disjunctions with at least one argument from the previous level.
    With include_theta every Theta_X is added, and with include_dep also
    the size-bounded formulas of every team. extra formulas and n_random
    formulas drawn from Random(seed) come last. With dedupe, only the
    first formula of each team-model set is kept.
    """

    domain = tuple(domain)
    check_guard(len(domain), max_vars, "|N|")
    formulas, sets, seen = [], [], set()

    def add(phi, models=None):
        if models is None:
            models = model_set(phi, domain)
        if dedupe and models in seen:
            return
        seen.add(models)
        formulas.append(phi)
        sets.append(models)

    add(TOP)
    add(BOT)
    for name in domain:
        add(Var(name))
        add(NegVar(name))
    if include_dep:
        for atom in dependence_atoms(domain):
            add(atom)
        add(constancy_conjunction(domain))

    start = 0
    for _ in range(depth):
        end = len(formulas)
        for i, j in product(range(end), repeat=2):
            if i < start and j < start:
                continue
            add(And(formulas[i], formulas[j]), sets[i] & sets[j])
            add(Or(formulas[i], formulas[j]), _or_models(sets[i], sets[j]))
        start = end

    if include_theta:
        for mask in range(1 << (1 << len(domain))):
            team = Team(domain, mask)
            add(theta_of_team(team))
            if include_dep:
                for bound in range(1, len(team)):
                    add(size_bounded_formula(team, bound))

    for phi in extra:
        add(phi)
    rng = random.Random(seed)
    for _ in range(n_random):
        add(random_formula(domain, rng, depth=2, include_dep=include_dep))

    log.info(
        "corpus over %s: %d formulas (depth %d, theta %s, dep %s)",
        list(domain),
        len(formulas),
        depth,
        include_theta,
        include_dep,
    )
    return Corpus(
        domain, formulas, depth, seed, include_theta, include_dep, tuple(sets)
    )


@dataclass(frozen=True)
class PropertyReport:
    """
    Outcome of a property check. counterexample is None iff holds.
    """

    name: str
    holds: bool
    counterexample: tuple = None

    def __str__(self):
        if self.holds:
            return f"PROPERTY {self.name} HOLDS"
        return f"PROPERTY {self.name} FAILS {_describe(self.counterexample)}"


def _describe(counterexample):
    return " ".join(
        f"[{item}]" if not isinstance(item, str) or " " in item else item
        for item in counterexample
    )


class CorpusTable:
    """
    Per-model tables over a corpus: the state set S_i and minimal states
    of every corpus formula as masks over state indices, and the
    entailment matrix between corpus formulas.
    """

    def __init__(self, model, corpus):
        """
        Constructor
        """

        if tuple(corpus.domain) != tuple(model.domain):
            raise DomainError(
                f"corpus over {list(corpus.domain)}, model over {list(model.domain)}"
            )
        if model.mode == CLASSICAL:
            for phi in corpus:
                if not is_flat(phi):
                    raise NotFlatError(f"{phi} is not a PL formula (classical model)")
        self.model = model
        self.corpus = corpus
        self.sets = corpus.model_sets
        size = len(corpus)

        # states grouped by label
        self.labels = []
        self.label_states = {}
        for i, state in enumerate(model.states):
            team = model.labels[state].mask
            if team not in self.label_states:
                self.labels.append(team)
                self.label_states[team] = 0
            self.label_states[team] |= 1 << i

        self.ext = [self.states_of(models) for models in self.sets]
        self.mins = [model.minimal_mask(ext) for ext in self.ext]
        self.ent = [
            [self.mins[i] & ~self.ext[j] == 0 for j in range(size)] for i in range(size)
        ]

        # split tables: for label X with members compacted to k bits, left[i][X]
        # marks the submasks Y of X with Y |= phi_i, right[i][X] marks the
        # complement index of those Y
        self.left, self.right = [], []
        self._expand = {team: list(submasks(team)) for team in self.labels}
        for models in self.sets:
            left, right = {}, {}
            for team in self.labels:
                subs = self._expand[team]
                top = len(subs) - 1
                lbits = rbits = 0
                for c, sub in enumerate(subs):
                    if models >> sub & 1:
                        lbits |= 1 << c
                        rbits |= 1 << (top - c)
                left[team], right[team] = lbits, rbits
            self.left.append(left)
            self.right.append(right)

    def states_of(self, models):
        """
        Mask of the states whose label is in the team-model set models.
        """

        mask = 0
        for team in self.labels:
            if models >> team & 1:
                mask |= self.label_states[team]
        return mask

    def or_states(self, i, j):
        """
        S(phi_i | phi_j) as a state mask.
        """

        mask = 0
        for team in self.labels:
            if self.left[i][team] & self.right[j][team]:
                mask |= self.label_states[team]
        return mask

    def min_labels(self, mins):
        """
        Set of label masks of a state mask.
        """

        return {self.model.labels[s].mask for s in self.model.ids(mins)}

    def entails_mask(self, mins, j):
        """
        True if every state of mins satisfies phi_j.
        """

        return mins & ~self.ext[j] == 0


def _has_subteam_below(model, state, strict):
    team = model.labels[state]
    for lower in model.below(state):
        sub = model.labels[lower]
        if sub != team and sub.issubset(team) and (sub.mask or not strict):
            return True
    return False


def triangle_failures(model, strict=False):
    """
    States with a label of size > 1 and no state below them labelled by a
    proper subteam.
    """

    return [
        state
        for state in model.states
        if len(model.labels[state]) > 1
        and not _has_subteam_below(model, state, strict)
    ]


def check_triangle(model, strict=False):
    """
    (triangle): every state labelled by a team X with |X| > 1 has a state
    below it labelled by a proper subteam of X. With strict, that subteam
    must be nonempty.
    """

    failures = triangle_failures(model, strict)
    if failures:
        return PropertyReport(TRIANGLE, False, (failures[0],))
    return PropertyReport(TRIANGLE, True)


def _min_labels(model, phi):
    return {
        model.labels[s].mask
        for s in model.ids(model.minimal_mask(model.extension(phi)))
    }


def check_star(model, phi, psi):
    """
    (star) for one pair: every minimal team of phi|psi is a minimal team
    of phi or of psi.
    """

    union = _min_labels(model, phi) | _min_labels(model, psi)
    minimal = model.minimal_mask(model.extension(Or(phi, psi)))
    for state in model.ids(minimal):
        if model.labels[state].mask not in union:
            return PropertyReport(STAR, False, (phi, psi, state))
    return PropertyReport(STAR, True)


def check_star_corpus(model, corpus):
    """
    (star) for every ordered pair of corpus formulas; first failing pair reported.
    """

    table = CorpusTable(model, corpus)
    size = len(corpus)
    labels = [table.min_labels(mins) for mins in table.mins]
    for i, j in product(range(size), repeat=2):
        union = labels[i] | labels[j]
        minimal = model.minimal_mask(table.or_states(i, j))
        for state in model.ids(minimal):
            if model.labels[state].mask not in union:
                return PropertyReport(STAR, False, (corpus[i], corpus[j], state))
    return PropertyReport(STAR, True)


def _check_rules_c(table):
    """
    First violated instance of a System C rule, or None.
    """

    corpus, ent, sets = table.corpus, table.ent, table.sets
    size = len(corpus)
    model = table.model

    for i in range(size):
        if not ent[i][i]:
            return ("Ref", (corpus[i],))
    for i, j, k in product(range(size), repeat=3):
        if sets[i] == sets[j] and ent[i][k] and not ent[j][k]:
            return ("LLE", (corpus[i], corpus[j], corpus[k]))
    for i, j, k in product(range(size), repeat=3):
        if ent[i][j] and sets[j] & ~sets[k] == 0 and not ent[i][k]:
            return ("RW", (corpus[i], corpus[j], corpus[k]))

    conj_mins = {}
    for i, j in product(range(size), repeat=2):
        conj_mins[i, j] = model.minimal_mask(table.ext[i] & table.ext[j])
    for i, j, k in product(range(size), repeat=3):
        if table.entails_mask(conj_mins[i, j], k) and ent[i][j] and not ent[i][k]:
            return ("Cut", (corpus[i], corpus[j], corpus[k]))
    for i, j, k in product(range(size), repeat=3):
        if ent[i][j] and ent[i][k] and not table.entails_mask(conj_mins[i, j], k):
            return ("CM", (corpus[i], corpus[j], corpus[k]))
    return None


def _check_rule_or(table):
    """
    First violated instance of (Or), or None.
    """

    corpus, ent = table.corpus, table.ent
    size = len(corpus)
    for i, j in product(range(size), repeat=2):
        shared = [k for k in range(size) if ent[i][k] and ent[j][k]]
        if not shared:
            continue
        mins = table.model.minimal_mask(table.or_states(i, j))
        for k in shared:
            if not table.entails_mask(mins, k):
                return (RULE_OR, (corpus[i], corpus[j], corpus[k]))
    return None


def _rule_report(name, violation):
    if violation is None:
        return PropertyReport(name, True)
    rule, formulas = violation
    return PropertyReport(name, False, (rule,) + formulas)


def check_system_c(model, corpus):
    """
    Ref, LLE, RW, Cut and CM over all corpus pairs and triples.
    """

    return _rule_report(SYSTEM_C, _check_rules_c(CorpusTable(model, corpus)))


def check_or(model, corpus):
    """
    The (Or) rule alone over all corpus triples.
    """

    return _rule_report(OR_RULE, _check_rule_or(CorpusTable(model, corpus)))


def check_system_p(model, corpus):
    """
    System C plus (Or).
    """

    table = CorpusTable(model, corpus)
    violation = _check_rules_c(table)
    if violation is None:
        violation = _check_rule_or(table)
    report = _rule_report(SYSTEM_P, violation)
    log.info("%s", report)
    return report


def or_counterexample(model):
    """
    (phi, psi, gamma) violating (Or) for a model that fails (triangle), else None.

    For the first failing state with label X, |X| = j = l + k with
    l = j // 2: phi bounds subteams of X to size l, psi and gamma to size k.
    Then phi |~ gamma and psi |~ gamma hold while phi|psi |~ gamma fails,
    since the failing state is minimal for phi|psi and X has size j > k.
    """

    failures = triangle_failures(model)
    if not failures:
        return None
    team = model.labels[failures[0]]
    size = len(team)
    lower = size // 2
    phi = size_bounded_formula(team, lower)
    psi = size_bounded_formula(team, size - lower)
    log.debug("or counterexample from %s (|X| = %d)", failures[0], size)
    return phi, psi, psi


def nontrivial_covers(team):
    """
    Pairs (Y, Z) of proper subteams of X with Y | Z = X, in descending Y then Z order.
    """

    covers = []
    for y in submasks(team.mask):
        if y == team.mask:
            continue
        rest = team.mask ^ y
        for z in submasks(team.mask):
            if z != team.mask and z & rest == rest:
                covers.append((Team(team.domain, y), Team(team.domain, z)))
    return covers


def dagger_pair(team, cover=None):
    """
    (Theta_Y, Theta_Z) for a nontrivial cover of X (the first one if none
    is given): X satisfies their disjunction but neither of them.
    """

    if popcount(team.mask) < 2:
        raise ValueError("a team with a nontrivial cover needs at least two members")
    first, second = cover if cover is not None else nontrivial_covers(team)[0]
    return theta_of_team(first), theta_of_team(second)
