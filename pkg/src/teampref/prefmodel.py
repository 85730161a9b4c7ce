"""
prefmodel.py

Explicit preferential models <S, l, <>: states labelled by teams (team
mode) or by single valuations (classical mode), ordered by a strict
partial order where a < b means a is preferred. Provides minimal-state
computation, preferential entailment, the induced classical model, the
canonical fixtures and the line-oriented model file format:

    vars p q
    state s1 = 10,01
    state s2 = 11
    order s1 < s2

Created on 17 Oct 2026

@author: teampref contributors
"""

from dataclasses import dataclass
from logging import getLogger

import networkx as nx
from pyparsing import (
    Group,
    Keyword,
    OneOrMore,
    ParseBaseException,
    Regex,
    Suppress,
)

from teampref.exceptions import DomainError, ModelError, NotFlatError, OrderError
from teampref.formula import is_flat
from teampref.globals import CLASSICAL, MAX_STATES, MAX_VARS, TEAM
from teampref.helpers import check_guard, iter_bits, popcount, submasks
from teampref.teams import Team, TeamEvaluator, format_team, parse_team

log = getLogger(__name__)


@dataclass(frozen=True)
class EntailmentVerdict:
    """
    Result of a preferential entailment query.
    """

    holds: bool
    minimal_states: tuple
    witness: object = None


class PreferentialModel:
    """
    PreferentialModel class. Immutable once constructed.
    """

    def __init__(
        self,
        domain,
        states,
        labels,
        edges=(),
        mode=TEAM,
        max_states=MAX_STATES,
        reduced=False,
    ):
        """
        Constructor

        :param domain: ordered variable names
        :param states: state ids, in presentation order
        :param labels: dict state id -> Team over domain
        :param edges: iterable of (a, b) meaning a < b
        :param mode: "team" or "classical"
        :param reduced: edges are already the covering pairs of the order
        """

        if mode not in (TEAM, CLASSICAL):
            raise ModelError(f"unknown model mode '{mode}'")
        self.domain = tuple(domain)
        self.states = tuple(states)
        self.mode = mode
        check_guard(len(self.states), max_states, "|S|")
        self.index = {}
        for i, state in enumerate(self.states):
            if state in self.index:
                raise ModelError(f"duplicate state {state}")
            self.index[state] = i
        self.labels = {}
        for state in self.states:
            if state not in labels:
                raise ModelError(f"state {state} has no label")
            team = labels[state]
            if tuple(team.domain) != self.domain:
                raise DomainError(
                    f"label of {state} is over {list(team.domain)}, "
                    f"model is over {list(self.domain)}"
                )
            if mode == CLASSICAL and len(team) != 1:
                raise ModelError(
                    f"classical state {state} must be labelled by one valuation"
                )
            self.labels[state] = team
        extra = set(labels) - set(self.index)
        if extra:
            raise ModelError(f"label for unknown state {sorted(extra)[0]}")

        graph = nx.DiGraph()
        graph.add_nodes_from(self.states)
        for a, b in edges:
            for state in (a, b):
                if state not in self.index:
                    raise ModelError(f"unknown state {state} in order")
            graph.add_edge(a, b)
        if not nx.is_directed_acyclic_graph(graph):
            raise OrderError("cycle")
        # the order is kept as its generating edges, never as the closure
        self.graph = graph
        self.reduced = reduced
        self.topo = [self.index[s] for s in nx.topological_sort(graph)]
        self.preds = [
            tuple(self.index[a] for a in graph.predecessors(s)) for s in self.states
        ]
        log.debug(
            "model over %s: %d states, %d order edges",
            list(self.domain),
            len(self.states),
            graph.number_of_edges(),
        )

    def __len__(self):
        return len(self.states)

    def precedes(self, a, b):
        """
        True if a < b in the (transitively closed) order.
        """

        return a != b and nx.has_path(self.graph, a, b)

    def below(self, state):
        """
        States preferred to state, in state order.
        """

        ancestors = nx.ancestors(self.graph, state)
        return [s for s in self.states if s in ancestors]

    def order_pairs(self):
        """
        Every pair (a, b) with a < b, in state order.
        """

        return [(a, b) for b in self.states for a in self.below(b)]

    def label(self, state):
        """
        Team labelling state.
        """

        return self.labels[state]

    def evaluator(self, phi):
        """
        Model checker for phi over this model's domain. Classical models
        only accept PL formulas.
        """

        if self.mode == CLASSICAL and not is_flat(phi):
            raise NotFlatError(f"{phi} is not a PL formula (classical model)")
        return TeamEvaluator(phi, self.domain)

    def extension(self, phi):
        """
        S(phi) as a mask over state indices.
        """

        evaluator = self.evaluator(phi)
        seen = {}
        mask = 0
        for i, state in enumerate(self.states):
            team = self.labels[state].mask
            if team not in seen:
                seen[team] = evaluator.holds(team)
            if seen[team]:
                mask |= 1 << i
        return mask

    def minimal_mask(self, marked):
        """
        Minimal elements of a state-index mask.
        """

        hit = bytearray(len(self.states))
        for i in iter_bits(marked):
            hit[i] = 1
        # covered[i]: some marked state lies strictly below state i
        covered = bytearray(len(self.states))
        minimal = []
        for i in self.topo:
            if any(hit[k] or covered[k] for k in self.preds[i]):
                covered[i] = 1
            elif hit[i]:
                minimal.append(i)
        return sum(1 << i for i in minimal)

    def ids(self, mask):
        """
        State ids of a state-index mask, in state order.
        """

        return tuple(self.states[i] for i in iter_bits(mask))

    def reduction_edges(self):
        """
        Covering pairs of the order in state order.
        """

        reduced = self.graph if self.reduced else nx.transitive_reduction(self.graph)
        return sorted(
            reduced.edges(), key=lambda e: (self.index[e[0]], self.index[e[1]])
        )


def new_model(domain, states, labels, order_edges=(), mode=TEAM, max_states=MAX_STATES):
    """
    Validated preferential model; the order is the transitive closure of order_edges.

    :raises OrderError: if order_edges contain a cycle
    :raises ModelError: on unknown or unlabelled states
    :raises DomainError: on a label over another domain
    """

    return PreferentialModel(domain, states, labels, order_edges, mode, max_states)


def min_states(model, phi):
    """
    The <-minimal elements of S(phi), in state order.
    """

    return list(model.ids(model.minimal_mask(model.extension(phi))))


def entails(model, phi, psi):
    """
    phi |~ psi in model: mark S(phi), keep the marked states with no marked
    state below them, and check psi on each of them.
    """

    minimal = model.ids(model.minimal_mask(model.extension(phi)))
    check = model.evaluator(psi)
    witness = next(
        (s for s in minimal if not check.holds(model.labels[s].mask)), None
    )
    verdict = EntailmentVerdict(witness is None, minimal, witness)
    log.debug("%s |~ %s: %s", phi, psi, verdict.holds)
    return verdict


def entails_definitional(model, phi, psi):
    """
    phi |~ psi straight from the definition: min(S(phi)) within S(psi),
    with minimality read off precedes() pair by pair.
    """

    check_phi, check_psi = model.evaluator(phi), model.evaluator(psi)
    marked = [s for s in model.states if check_phi.holds(model.labels[s].mask)]
    minimal = tuple(
        s for s in marked if not any(model.precedes(t, s) for t in marked)
    )
    witness = next(
        (s for s in minimal if not check_psi.holds(model.labels[s].mask)), None
    )
    return EntailmentVerdict(witness is None, minimal, witness)


def induce_classical(model):
    """
    Classical model on the states labelled by singleton teams, with the
    order restricted to them.
    """

    kept = [s for s in model.states if len(model.labels[s]) == 1]
    keep = set(kept)
    edges = [(a, b) for b in kept for a in model.below(b) if a in keep]
    return PreferentialModel(
        model.domain,
        kept,
        {s: model.labels[s] for s in kept},
        edges,
        mode=CLASSICAL,
    )


def state_name(team):
    """
    Fixture state id of a team, e.g. s_0_1 for {0, 1}.
    """

    if not team.mask:
        return "s_empty"
    return "s_" + "_".join(str(val) for val in team.valuations())


def _nonempty_teams(domain, max_vars):
    domain = tuple(domain)
    check_guard(len(domain), max_vars, "|N|")
    return [Team(domain, mask) for mask in range(1, 1 << (1 << len(domain)))]


def _team_model(domain, teams, edges, max_states=MAX_STATES, reduced=False):
    names = {team.mask: state_name(team) for team in teams}
    return PreferentialModel(
        domain,
        [names[team.mask] for team in teams],
        {names[team.mask]: team for team in teams},
        [(names[a], names[b]) for a, b in edges],
        max_states=max_states,
        reduced=reduced,
    )


def _covering_pairs(teams):
    """
    (Y, X) for every X and every Y obtained by dropping one member of X.
    """

    present = {team.mask for team in teams}
    for team in teams:
        for i in iter_bits(team.mask):
            smaller = team.mask ^ (1 << i)
            if smaller in present:
                yield smaller, team.mask


def w_sub(domain, max_vars=MAX_VARS, max_states=MAX_STATES):
    """
    All nonempty teams over domain, Y < X iff Y is a proper subteam of X.
    """

    teams = _nonempty_teams(domain, max_vars)
    return _team_model(
        domain, teams, _covering_pairs(teams), max_states, reduced=True
    )


def w_sup(domain, max_vars=MAX_VARS, max_states=MAX_STATES):
    """
    All nonempty teams over domain, Y < X iff X is a proper subteam of Y.
    """

    teams = _nonempty_teams(domain, max_vars)
    pairs = [(big, small) for small, big in _covering_pairs(teams)]
    return _team_model(domain, teams, pairs, max_states, reduced=True)


def w_pq():
    """
    Fixture over {p, q} violating (Or): with v1=11, v2=01, v3=00,
    X_pq={v1}, X_npq={v2}, X_iff={v1,v3}; X_iff < X_pq, X_iff < X_npq
    and X_pq < X, X_npq < X for every other team X.
    """

    domain = ("p", "q")
    teams = _nonempty_teams(domain, MAX_VARS)
    x_pq = parse_team("11", domain).mask
    x_npq = parse_team("01", domain).mask
    x_iff = parse_team("11,00", domain).mask
    pairs = [(x_iff, x_pq), (x_iff, x_npq)]
    for team in teams:
        if team.mask not in (x_npq, x_iff, x_pq):
            pairs.append((x_pq, team.mask))
        if team.mask not in (x_npq, x_iff):
            pairs.append((x_npq, team.mask))
    return _team_model(domain, teams, pairs)


def w_circ_star():
    """
    Fixture over {p}: X_p={1}, X_np={0}, X_both={0,1} with X_both below both others.
    """

    domain = ("p",)
    x_p = parse_team("1", domain)
    x_np = parse_team("0", domain)
    x_both = parse_team("0,1", domain)
    return _team_model(
        domain,
        [x_p, x_np, x_both],
        [(x_both.mask, x_p.mask), (x_both.mask, x_np.mask)],
    )


def random_model(
    domain,
    rng,
    n_states=6,
    edge_prob=0.3,
    allow_empty=False,
    triangle=False,
    mode=TEAM,
):
    """
    Random preferential model over domain.

    Edges only go from a state with a smaller label to one with a label at
    least as large (ties broken by state index), so the order is acyclic.
    With triangle=True every state labelled by a team of size > 1 also gets
    a state labelled by a proper subteam placed below it.
    """

    domain = tuple(domain)
    size = 1 << len(domain)
    if mode == CLASSICAL:
        masks = [1 << rng.randrange(size) for _ in range(n_states)]
    else:
        low = 0 if allow_empty else 1
        masks = [rng.randrange(low, 1 << size) for _ in range(n_states)]
    pairs = []
    if triangle and mode == TEAM:
        pending = list(range(len(masks)))
        while pending:
            i = pending.pop()
            if popcount(masks[i]) < 2:
                continue
            subs = [
                s
                for s in submasks(masks[i])
                if s != masks[i] and (allow_empty or s)
            ]
            j = len(masks)
            masks.append(rng.choice(subs))
            pairs.append((j, i))
            pending.append(j)
    rank = sorted(range(len(masks)), key=lambda i: (popcount(masks[i]), i))
    for x, i in enumerate(rank):
        for j in rank[x + 1:]:
            if rng.random() < edge_prob:
                pairs.append((i, j))
    states = [f"s{i}" for i in range(len(masks))]
    return PreferentialModel(
        domain,
        states,
        {states[i]: Team(domain, m) for i, m in enumerate(masks)},
        [(states[a], states[b]) for a, b in pairs],
        mode=mode,
    )


def _build_model_grammar():
    """
    One grammar per line of a model file.
    """

    ident = Regex(r"[A-Za-z_][A-Za-z0-9_]*")
    state_id = Regex(r"[A-Za-z0-9_]+")
    team = Regex(r"-|[01]*(?:\s*,\s*[01]*)*")
    vars_line = Keyword("vars") + Group(OneOrMore(ident))
    mode_line = Keyword("mode") + (Keyword(TEAM) | Keyword(CLASSICAL))
    state_line = Keyword("state") + state_id + Suppress("=") + team
    order_line = Keyword("order") + state_id + Suppress("<") + state_id
    return vars_line | mode_line | state_line | order_line


MODEL_LINE = _build_model_grammar()


def parse_model(text, max_states=MAX_STATES):
    """
    Preferential model from model file text.

    :raises ModelError: on malformed lines or states before 'vars'
    """

    domain = None
    mode = TEAM
    states, labels, edges = [], {}, []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            toks = MODEL_LINE.parse_string(line, parse_all=True)
        except ParseBaseException as err:
            raise ModelError(f"line {lineno}: {err.msg}") from err
        kind = toks[0]
        if kind == "vars":
            if domain is not None:
                raise ModelError(f"line {lineno}: duplicate vars line")
            domain = tuple(toks[1])
            continue
        if kind == "mode":
            mode = toks[1]
            continue
        if domain is None:
            raise ModelError(f"line {lineno}: '{kind}' before 'vars'")
        if kind == "state":
            states.append(toks[1])
            labels[toks[1]] = parse_team(toks[2], domain)
        else:
            edges.append((toks[1], toks[2]))
    if domain is None:
        raise ModelError("model file has no 'vars' line")
    return PreferentialModel(domain, states, labels, edges, mode, max_states)


def load_model(filename, max_states=MAX_STATES):
    """
    Read a model file.
    """

    with open(filename, "r", encoding="utf-8") as infile:
        return parse_model(infile.read(), max_states)


def format_model(model):
    """
    Model file text: the order is written as its transitive reduction.
    """

    lines = [f"vars {' '.join(model.domain)}"]
    if model.mode == CLASSICAL:
        lines.append(f"mode {CLASSICAL}")
    for state in model.states:
        lines.append(f"state {state} = {format_team(model.labels[state])}")
    for a, b in model.reduction_edges():
        lines.append(f"order {a} < {b}")
    return "\n".join(lines) + "\n"
