"""
succinct.py

Preferential models given by a pair of circuits (L, O) over state
indices {0,1}^m, and the entailment algorithms that work on them:

    L(s)      -> def, label bits   (n valuation bits, or 2^n team-membership bits)
    O(s, s')  -> def, lt           (lt = 1 iff s < s', def = 0 means undefined)

States with L(s).def = 0 are irrelevant. Also holds a small SAT search for
PL formulas, lexicographically extreme models, the OLMS problem and its
reductions to succinct entailment, and the per-state oracle formulation
of explicit PDL entailment.

Succinct model file:

    succinct classical m=2 vars x1 x2
    labels model.labels.net
    order model.order.net
    kind rlex

Created on 17 Oct 2026

@author: teampref contributors
"""

import os
from dataclasses import dataclass
from logging import getLogger

from pyparsing import (
    Group,
    Keyword,
    ParseBaseException,
    Regex,
    Suppress,
    Word,
    ZeroOrMore,
    nums,
)

from teampref.circuits import (
    CircuitBuilder,
    build_lex_circuit,
    identity_circuit,
    lex_inputs,
    load_netlist,
    print_netlist,
)
from teampref.exceptions import DomainError, ModelError, NotFlatError, OrderError
from teampref.formula import (
    BOT,
    TOP,
    And,
    Bot,
    Dep,
    NegVar,
    Or,
    Top,
    Var,
    formula_vars,
    is_flat,
)
from teampref.globals import (
    CLASSICAL,
    OLMS_MAX_VARS,
    ONE_FIRST,
    ORDER_GENERIC,
    ORDER_RLEX,
    RLEX,
    SAT_MAX_VARS,
    STRICT,
    SUCC_MAX_M_CLASSICAL,
    SUCC_MAX_M_TEAM,
    SUCC_MAX_N_TEAM,
    TEAM,
)
from teampref.helpers import bitstring, check_guard, int_to_bits, iter_bits
from teampref.prefmodel import (
    EntailmentVerdict,
    PreferentialModel,
    state_name,
)
from teampref.teams import Team, TeamEvaluator, Valuation, eval_classical

log = getLogger(__name__)


class SuccinctModel:
    """
    SuccinctModel class - a preferential model represented by circuits.
    """

    def __init__(self, mode, width, domain, labels, order, order_kind=ORDER_GENERIC):
        """
        Constructor

        :param mode: "classical" or "team"
        :param width: m, the number of state bits
        :param domain: ordered variable names
        :param labels: L circuit, m inputs, outputs def + label bits
        :param order: O circuit, 2m inputs, outputs def + lt
        :param order_kind: "rlex" when O is the strict rlex order and L the identity
        """

        if mode not in (CLASSICAL, TEAM):
            raise ModelError(f"unknown model mode '{mode}'")
        if order_kind not in (ORDER_GENERIC, ORDER_RLEX):
            raise ModelError(f"unknown order kind '{order_kind}'")
        self.mode = mode
        self.width = width
        self.domain = tuple(domain)
        self.labels = labels
        self.order = order
        self.order_kind = order_kind
        label_bits = len(self.domain) if mode == CLASSICAL else 1 << len(self.domain)
        if len(labels.inputs) != width or len(labels.outputs) != 1 + label_bits:
            raise ModelError(
                f"L needs {width} inputs and {1 + label_bits} outputs, "
                f"has {len(labels.inputs)} and {len(labels.outputs)}"
            )
        if len(order.inputs) != 2 * width or len(order.outputs) != 2:
            raise ModelError(
                f"O needs {2 * width} inputs and 2 outputs, "
                f"has {len(order.inputs)} and {len(order.outputs)}"
            )
        self._label_table = None
        self._order_cache = {}

    def state_id(self, index):
        """
        State id: 's' followed by the m state bits.
        """

        return "s" + bitstring(int_to_bits(index, self.width))

    def check_guards(
        self,
        max_m_classical=SUCC_MAX_M_CLASSICAL,
        max_m_team=SUCC_MAX_M_TEAM,
        max_n_team=SUCC_MAX_N_TEAM,
    ):
        """
        Raise GuardError if the state space is too large to enumerate.
        """

        if self.mode == CLASSICAL:
            check_guard(self.width, max_m_classical, "m")
        else:
            check_guard(self.width, max_m_team, "m")
            check_guard(len(self.domain), max_n_team, "n")

    def label_table(self):
        """
        List of (defined, team mask) per state index.
        """

        if self._label_table is None:
            table = []
            for index in range(1 << self.width):
                out = self.labels.evaluate(int_to_bits(index, self.width))
                if self.mode == CLASSICAL:
                    mask = 1 << Valuation(self.domain, out[1:]).value
                else:
                    mask = sum(bit << i for i, bit in enumerate(out[1:]))
                table.append((out[0] == 1, mask))
            self._label_table = table
        return self._label_table

    def relevant(self):
        """
        Indices of the states with def = 1.
        """

        return [i for i, (defined, _) in enumerate(self.label_table()) if defined]

    def label(self, index):
        """
        Team labelling state index.
        """

        return Team(self.domain, self.label_table()[index][1])

    def precedes(self, first, second):
        """
        O(first, second) has def = 1 and lt = 1.
        """

        key = (first, second)
        if key not in self._order_cache:
            bits = int_to_bits(first, self.width) + int_to_bits(second, self.width)
            defined, less = self.order.evaluate(bits)
            self._order_cache[key] = bool(defined and less)
        return self._order_cache[key]

    def evaluator(self, phi):
        """
        Model checker for state labels.
        """

        if self.mode == CLASSICAL and not is_flat(phi):
            raise NotFlatError(f"{phi} is not a PL formula (classical model)")
        return TeamEvaluator(phi, self.domain)


@dataclass(frozen=True)
class SatResult:
    """
    Outcome of a satisfiability query.
    """

    satisfiable: bool
    model: Valuation = None


def substitute(phi, name, value):
    """
    Replace the variable name by the constant value: p becomes T or F,
    ~p the opposite constant. No simplification.
    """

    if isinstance(phi, Var) and phi.name == name:
        return TOP if value else BOT
    if isinstance(phi, NegVar) and phi.name == name:
        return BOT if value else TOP
    if isinstance(phi, And):
        return And(
            substitute(phi.left, name, value), substitute(phi.right, name, value)
        )
    if isinstance(phi, Or):
        return Or(
            substitute(phi.left, name, value), substitute(phi.right, name, value)
        )
    if isinstance(phi, Dep):
        raise NotFlatError(f"cannot substitute into dependence atom {phi}")
    return phi


def _fold(phi):
    """
    Constant folding.
    """

    if isinstance(phi, And):
        left, right = _fold(phi.left), _fold(phi.right)
        if isinstance(left, Bot) or isinstance(right, Bot):
            return BOT
        if isinstance(left, Top):
            return right
        if isinstance(right, Top):
            return left
        return And(left, right)
    if isinstance(phi, Or):
        left, right = _fold(phi.left), _fold(phi.right)
        if isinstance(left, Top) or isinstance(right, Top):
            return TOP
        if isinstance(left, Bot):
            return right
        if isinstance(right, Bot):
            return left
        return Or(left, right)
    return phi


def _unit_literals(phi):
    """
    Literals that are top-level conjuncts of phi.
    """

    units, stack = [], [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, And):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, Var):
            units.append((node.name, 1))
        elif isinstance(node, NegVar):
            units.append((node.name, 0))
    return units


def _search(phi, domain, assignment):
    phi = _fold(phi)
    while True:
        if isinstance(phi, Top):
            return assignment
        if isinstance(phi, Bot):
            return None
        units = _unit_literals(phi)
        if not units:
            break
        name, value = units[0]
        assignment = {**assignment, name: value}
        phi = _fold(substitute(phi, name, value))
    occurring = formula_vars(phi)
    name = next(x for x in domain if x in occurring and x not in assignment)
    for value in (0, 1):
        found = _search(
            substitute(phi, name, value), domain, {**assignment, name: value}
        )
        if found is not None:
            return found
    return None


def sat_oracle(phi, domain, max_vars=SAT_MAX_VARS):
    """
    Satisfiability of the PL formula phi over domain.

    Backtracking over the variables in domain order, branch 0 before 1,
    with top-level literal conjuncts propagated first. Variables the
    search never fixes are 0 in the returned model.
    """

    domain = tuple(domain)
    check_guard(len(domain), max_vars, "|N|")
    if not is_flat(phi):
        raise NotFlatError(f"{phi} is not a PL formula")
    unbound = formula_vars(phi) - set(domain)
    if unbound:
        raise DomainError(f"unbound variable(s) {', '.join(sorted(unbound))}")
    found = _search(phi, domain, {})
    if found is None:
        return SatResult(False)
    return SatResult(True, Valuation(domain, tuple(found.get(x, 0) for x in domain)))


class SatOracle:
    """
    Callable SAT oracle over a fixed domain that counts its queries.
    """

    def __init__(self, domain, max_vars=SAT_MAX_VARS):
        """
        Constructor
        """

        self.domain = tuple(domain)
        self.max_vars = max_vars
        self.calls = 0

    def __call__(self, phi):
        self.calls += 1
        return sat_oracle(phi, self.domain, self.max_vars)


def lexmax_model(
    phi, domain, bit_preference=ONE_FIRST, oracle=None, max_vars=SAT_MAX_VARS
):
    """
    Lexicographically largest (ONE_FIRST) or smallest (ZERO_FIRST)
    satisfying valuation of phi over domain, or None if phi is unsatisfiable.

    Fixes the variables in domain order, one oracle call each: the
    preferred bit is kept when phi stays satisfiable, else the other one.
    """

    domain = tuple(domain)
    check_guard(len(domain), max_vars, "|N|")
    if not is_flat(phi):
        raise NotFlatError(f"{phi} is not a PL formula")
    oracle = oracle if oracle is not None else SatOracle(domain, max_vars)
    current, bits = phi, []
    for name in domain:
        trial = substitute(current, name, bit_preference)
        if oracle(trial).satisfiable:
            current = trial
            bits.append(bit_preference)
        else:
            current = substitute(current, name, 1 - bit_preference)
            bits.append(1 - bit_preference)
    val = Valuation(domain, tuple(bits))
    return val if eval_classical(val, phi) else None


def natural_domain(phi):
    """
    Variables of phi sorted by name with numeric suffixes compared as numbers.
    """

    def key(name):
        stem = name.rstrip("0123456789")
        digits = name[len(stem):]
        return (stem, int(digits) if digits else -1, name)

    return tuple(sorted(formula_vars(phi), key=key))


def olms(phi, domain=None, max_vars=OLMS_MAX_VARS):
    """
    True iff phi is satisfiable and its lexicographically largest
    satisfying valuation sets the last variable to 1. Brute force.
    """

    domain = natural_domain(phi) if domain is None else tuple(domain)
    check_guard(len(domain), max_vars, "|N|")
    if not domain:
        return False
    for value in range((1 << len(domain)) - 1, -1, -1):
        val = Valuation.from_int(value, domain)
        if eval_classical(val, phi):
            return val.bits[-1] == 1
    return False


def olms_reduction(phi, domain=None):
    """
    (M, phi, ~x_n): M has the states {0,1}^n, L the identity with def = 1
    and O the strict rlex order. M entails phi |~ ~x_n iff olms(phi) is false.
    """

    domain = natural_domain(phi) if domain is None else tuple(domain)
    if not domain:
        raise ModelError("olms reduction needs at least one variable")
    model = SuccinctModel(
        CLASSICAL,
        len(domain),
        domain,
        identity_circuit(lex_inputs(len(domain), "s")),
        build_lex_circuit(len(domain), RLEX, STRICT, with_def=True),
        ORDER_RLEX,
    )
    return model, phi, NegVar(domain[-1])


def _decoder_circuit(domain):
    """
    Team-mode L for singleton teams: t_i = 1 iff the state bits spell valuation i.
    """

    width = len(domain)
    inputs = lex_inputs(width, "s")
    builder = CircuitBuilder(inputs)
    outputs = [builder.const(1, "def")]
    for value in range(1 << width):
        bits = int_to_bits(value, width)
        outputs.append(
            builder.and_all(
                [
                    wire if bit else builder.not_(wire)
                    for wire, bit in zip(inputs, bits)
                ],
                f"t{value}",
            )
        )
    return builder.build(outputs)


def singleton_team_reduction(phi, domain=None):
    """
    Team-mode counterpart of olms_reduction: state s is labelled by the
    singleton team {s}, ordered by strict rlex.
    """

    domain = natural_domain(phi) if domain is None else tuple(domain)
    if not domain:
        raise ModelError("reduction needs at least one variable")
    model = SuccinctModel(
        TEAM,
        len(domain),
        domain,
        _decoder_circuit(domain),
        build_lex_circuit(len(domain), RLEX, STRICT, with_def=True),
    )
    return model, phi, NegVar(domain[-1])


def model_checking_reduction(team, phi, mode=TEAM):
    """
    (W, T, phi) with W the single-state model labelled by team:
    team |= phi iff T |~ phi in W.
    """

    state = state_name(team)
    model = PreferentialModel(team.domain, [state], {state: team}, (), mode=mode)
    return model, TOP, phi


def succ_entails_generic(model, phi, psi, **guards):
    """
    phi |~ psi in a succinct model by exhaustive search: fails iff some
    relevant state satisfies phi but not psi and no relevant phi-state
    precedes it.
    """

    model.check_guards(**guards)
    check_phi, check_psi = model.evaluator(phi), model.evaluator(psi)
    table = model.label_table()
    marked = [s for s in model.relevant() if check_phi.holds(table[s][1])]
    minimal = tuple(
        s for s in marked if not any(model.precedes(t, s) for t in marked if t != s)
    )
    witness = next((s for s in minimal if not check_psi.holds(table[s][1])), None)
    return EntailmentVerdict(
        witness is None,
        tuple(model.state_id(s) for s in minimal),
        None if witness is None else model.state_id(witness),
    )


def succ_entails_rlex(model, phi, psi, oracle=None):
    """
    phi |~ psi when O is the strict rlex order and L the identity: the
    minimal phi-state is the lexicographically largest model of phi.
    """

    if model.mode != CLASSICAL:
        raise ModelError("rlex algorithm needs a classical succinct model")
    if model.order_kind != ORDER_RLEX:
        raise ModelError("rlex algorithm needs a model with declared rlex order")
    best = lexmax_model(phi, model.domain, ONE_FIRST, oracle)
    if best is None:
        return EntailmentVerdict(True, ())
    state = model.state_id(best.value)
    holds = eval_classical(best, psi)
    return EntailmentVerdict(holds, (state,), None if holds else state)


def succ_entails(model, phi, psi, algo=ORDER_GENERIC, **guards):
    """
    Dispatch to the generic or the rlex algorithm.
    """

    if algo == ORDER_RLEX:
        return succ_entails_rlex(model, phi, psi)
    return succ_entails_generic(model, phi, psi, **guards)


def expand(model, **guards):
    """
    Explicit preferential model of the relevant states of a succinct model.

    :raises OrderError: if O is not a strict partial order on relevant states
    """

    model.check_guards(**guards)
    relevant = model.relevant()
    states = [model.state_id(s) for s in relevant]
    labels = {model.state_id(s): model.label(s) for s in relevant}
    edges = [
        (model.state_id(a), model.state_id(b))
        for a in relevant
        for b in relevant
        if model.precedes(a, b)
    ]
    try:
        explicit = PreferentialModel(
            model.domain, states, labels, edges, mode=model.mode
        )
    except OrderError as err:
        raise OrderError("O is not a strict partial order") from err
    if len(explicit.order_pairs()) != len(edges):
        raise OrderError("O is not a strict partial order (not transitive)")
    return explicit


def ent_pdl(model, phi, psi):
    """
    Explicit entailment as per-state oracle answers: check every state
    against phi and psi, then reject iff a minimal phi-state answers (1, 0).
    """

    check_phi, check_psi = model.evaluator(phi), model.evaluator(psi)
    answers = [
        (check_phi.holds(model.labels[s].mask), check_psi.holds(model.labels[s].mask))
        for s in model.states
    ]
    marked = sum(1 << i for i, (left, _) in enumerate(answers) if left)
    minimal = model.minimal_mask(marked)
    rejecting = [i for i in iter_bits(minimal) if answers[i] == (True, False)]
    witness = model.states[rejecting[0]] if rejecting else None
    return EntailmentVerdict(not rejecting, model.ids(minimal), witness)


def _random_literal(builder, inputs, rng):
    wire = rng.choice(inputs)
    return builder.not_(wire) if rng.random() < 0.5 else wire


def _random_wire(builder, inputs, rng):
    roll = rng.random()
    if roll < 0.1:
        return builder.const(rng.randrange(2))
    if roll < 0.5:
        return _random_literal(builder, inputs, rng)
    left = _random_literal(builder, inputs, rng)
    right = _random_literal(builder, inputs, rng)
    return builder.and_(left, right) if roll < 0.75 else builder.or_(left, right)


def _comparator(builder, first, second, rng):
    """
    Strict lex comparison of XOR-masked projections of two state blocks.
    """

    width = len(first)
    positions = rng.sample(range(width), rng.randint(1, width))
    flips = {p: rng.random() < 0.5 for p in positions}

    def value(block, p):
        return builder.not_(block[p]) if flips[p] else block[p]

    terms = []
    for k, p in enumerate(positions):
        prefix = [builder.eq(value(first, q), value(second, q)) for q in positions[:k]]
        greater = builder.gt(value(second, p), value(first, p))
        terms.append(builder.and_all([greater] + prefix))
    return builder.or_all(terms)


def random_succinct_model(mode, width, domain, rng, def_prob=0.8):
    """
    Random succinct model. O is the conjunction of one or two strict
    lexicographic comparators on masked projections of the state bits,
    hence always a strict partial order.
    """

    domain = tuple(domain)
    inputs = lex_inputs(width, "s")
    builder = CircuitBuilder(inputs)
    if rng.random() < def_prob:
        defined = builder.const(1, "def")
    else:
        defined = builder.or_(
            _random_literal(builder, inputs, rng),
            _random_literal(builder, inputs, rng),
            "def",
        )
    count = len(domain) if mode == CLASSICAL else 1 << len(domain)
    outputs = [defined] + [_random_wire(builder, inputs, rng) for _ in range(count)]
    labels = builder.build(outputs)

    first, second = lex_inputs(width, "s"), lex_inputs(width, "r")
    builder = CircuitBuilder(first + second)
    comparators = [
        _comparator(builder, first, second, rng) for _ in range(rng.randint(1, 2))
    ]
    order = builder.build([builder.const(1, "def"), builder.and_all(comparators, "lt")])
    return SuccinctModel(mode, width, domain, labels, order)


def _build_header_grammar():
    """
    Grammar for the lines of a succinct model file.
    """

    ident = Regex(r"[A-Za-z_][A-Za-z0-9_]*")
    header = (
        Keyword("succinct")
        + (Keyword(CLASSICAL) | Keyword(TEAM))
        + Suppress(Keyword("m"))
        + Suppress("=")
        + Word(nums)
        + Suppress(Keyword("vars"))
        + Group(ZeroOrMore(ident))
    )
    path = Regex(r"\S+")
    labels = Keyword("labels") + path
    order = Keyword("order") + path
    kind = Keyword("kind") + (Keyword(ORDER_GENERIC) | Keyword(ORDER_RLEX))
    return header | labels | order | kind


SUCCINCT_LINE = _build_header_grammar()


def load_succinct_model(filename):
    """
    Read a succinct model file; netlist paths are relative to it.

    :raises ModelError: on malformed or incomplete files
    """

    base = os.path.dirname(os.path.abspath(filename))
    with open(filename, "r", encoding="utf-8") as infile:
        text = infile.read()
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            toks = SUCCINCT_LINE.parse_string(line, parse_all=True)
        except ParseBaseException as err:
            raise ModelError(f"line {lineno}: {err.msg}") from err
        if toks[0] == "succinct":
            fields["mode"], fields["width"], fields["domain"] = (
                toks[1],
                int(toks[2]),
                tuple(toks[3]),
            )
        else:
            fields[toks[0]] = toks[1]
    for key in ("mode", "labels", "order"):
        if key not in fields:
            raise ModelError(f"succinct model file lacks '{key}'")
    return SuccinctModel(
        fields["mode"],
        fields["width"],
        fields["domain"],
        load_netlist(os.path.join(base, fields["labels"])),
        load_netlist(os.path.join(base, fields["order"])),
        fields.get("kind", ORDER_GENERIC),
    )


def save_succinct_model(model, filename):
    """
    Write a succinct model file and its two netlists next to it.
    """

    stem = os.path.splitext(os.path.basename(filename))[0]
    base = os.path.dirname(os.path.abspath(filename))
    labels_name, order_name = f"{stem}.labels.net", f"{stem}.order.net"
    with open(os.path.join(base, labels_name), "w", encoding="utf-8") as outfile:
        outfile.write(print_netlist(model.labels))
    with open(os.path.join(base, order_name), "w", encoding="utf-8") as outfile:
        outfile.write(print_netlist(model.order))
    with open(filename, "w", encoding="utf-8") as outfile:
        outfile.write(
            f"succinct {model.mode} m={model.width} vars {' '.join(model.domain)}\n"
            f"labels {labels_name}\n"
            f"order {order_name}\n"
            f"kind {model.order_kind}\n"
        )
