"""
formula.py

This module contains the formula AST for propositional dependence logic in
negation normal form, its concrete-syntax parser and printer, and the
formula constructions used throughout the package:

    flatten                 - replace every dependence atom by T
    theta_of_team           - formula whose team models are the subteams of X
    constancy_conjunction   - dep(p1) & ... & dep(pn)
    size_bounded_formula    - subteams of X of cardinality at most l

Concrete syntax:

    formula := disj
    disj    := conj ('|' conj)*
    conj    := atom ('&' atom)*
    atom    := 'T' | 'F' | ident | '~' ident | 'dep(' identlist? ';' ident ')'
               | 'dep(' ident ')' | '(' formula ')'

'&' binds tighter than '|', both associate to the left. Negation may only
precede a variable.

Created on 17 Oct 2026

@author: teampref contributors
"""

from dataclasses import dataclass
from logging import getLogger

from pyparsing import (
    Empty,
    Forward,
    Group,
    Keyword,
    Literal,
    ParseBaseException,
    ParseFatalException,
    Regex,
    Suppress,
    ZeroOrMore,
)

from teampref.exceptions import DomainError, FormulaSyntaxError

log = getLogger(__name__)

PREC_OR = 1
PREC_AND = 2
PREC_ATOM = 3


class Formula:
    """
    Formula base class. All nodes are immutable.
    """

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Var(Formula):
    """
    Positive literal p.
    """

    name: str


@dataclass(frozen=True)
class NegVar(Formula):
    """
    Negative literal ~p.
    """

    name: str


@dataclass(frozen=True)
class Top(Formula):
    """
    Verum T.
    """


@dataclass(frozen=True)
class Bot(Formula):
    """
    Falsum F.
    """


@dataclass(frozen=True)
class And(Formula):
    """
    Conjunction.
    """

    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    """
    (Split) disjunction.
    """

    left: Formula
    right: Formula


@dataclass(frozen=True)
class Dep(Formula):
    """
    Dependence atom dep(a1 ... ak ; b). No determinants = constancy atom dep(b).
    """

    determinants: tuple
    determined: str


TOP = Top()
BOT = Bot()


def formula_vars(phi):
    """
    Set of variable names occurring in phi.
    """

    found = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, (Var, NegVar)):
            found.add(node.name)
        elif isinstance(node, (And, Or)):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, Dep):
            found.update(node.determinants)
            found.add(node.determined)
    return frozenset(found)


def is_flat(phi):
    """
    True if phi contains no dependence atom, i.e. phi is a PL formula.
    """

    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, Dep):
            return False
        if isinstance(node, (And, Or)):
            stack.append(node.left)
            stack.append(node.right)
    return True


def conjunction(items):
    """
    Left-associated conjunction; the empty conjunction is T.
    """

    items = list(items)
    if not items:
        return TOP
    result = items[0]
    for item in items[1:]:
        result = And(result, item)
    return result


def disjunction(items):
    """
    Left-associated disjunction; the empty disjunction is F.
    """

    items = list(items)
    if not items:
        return BOT
    result = items[0]
    for item in items[1:]:
        result = Or(result, item)
    return result


def flatten(phi):
    """
    Replace all dependence atoms in phi by T. The result is a PL formula.
    """

    if isinstance(phi, Dep):
        return TOP
    if isinstance(phi, And):
        return And(flatten(phi.left), flatten(phi.right))
    if isinstance(phi, Or):
        return Or(flatten(phi.left), flatten(phi.right))
    return phi


def valuation_conjunct(domain, bits):
    """
    p1^v(1) & ... & pn^v(n) for a single valuation.
    """

    return conjunction(
        Var(name) if bit else NegVar(name) for name, bit in zip(domain, bits)
    )


def theta_of_team(team, domain=None):
    """
    Theta_X: the disjunction over v in X of the valuation conjuncts.
    Its team models are exactly the subteams of X. Theta of the empty
    team is F, whose only model is the empty team.
    """

    if domain is not None and tuple(domain) != tuple(team.domain):
        raise DomainError(
            f"team domain {list(team.domain)} does not match {list(domain)}"
        )
    return disjunction(
        valuation_conjunct(team.domain, val.bits) for val in team.valuations()
    )


def constancy_conjunction(domain):
    """
    theta := dep(p1) & ... & dep(pn). Satisfied exactly by teams of size <= 1.
    """

    if not domain:
        raise ValueError("constancy conjunction needs a nonempty variable list")
    return conjunction(Dep((), name) for name in domain)


def size_bounded_formula(team, bound):
    """
    Theta_X & (theta | ... | theta) with bound copies of theta. Its team
    models are the subteams of X of cardinality at most bound.
    """

    if bound < 1:
        raise ValueError(f"cardinality bound must be positive, got {bound}")
    theta = constancy_conjunction(team.domain)
    return And(theta_of_team(team), disjunction([theta] * bound))


def random_formula(domain, rng, depth=2, include_dep=True):
    """
    Random formula over domain with connective nesting at most depth.
    """

    domain = list(domain)
    if depth <= 0 or rng.random() < 0.3:
        roll = rng.random()
        if roll < 0.08:
            return TOP
        if roll < 0.16:
            return BOT
        if include_dep and roll < 0.4:
            determined = rng.choice(domain)
            others = [name for name in domain if name != determined]
            determinants = tuple(name for name in others if rng.random() < 0.5)
            return Dep(determinants, determined)
        name = rng.choice(domain)
        return Var(name) if rng.random() < 0.5 else NegVar(name)
    cls = And if rng.random() < 0.5 else Or
    return cls(
        random_formula(domain, rng, depth - 1, include_dep),
        random_formula(domain, rng, depth - 1, include_dep),
    )


def _precedence(phi):
    if isinstance(phi, Or):
        return PREC_OR
    if isinstance(phi, And):
        return PREC_AND
    return PREC_ATOM


def _wrap(child, level, right):
    text = to_text(child)
    prec = _precedence(child)
    if prec < level or (right and prec == level):
        return f"({text})"
    return text


def to_text(phi):
    """
    Print phi in concrete syntax. parse(to_text(phi)) == phi.
    """

    if isinstance(phi, Var):
        return phi.name
    if isinstance(phi, NegVar):
        return f"~{phi.name}"
    if isinstance(phi, Top):
        return "T"
    if isinstance(phi, Bot):
        return "F"
    if isinstance(phi, Dep):
        if not phi.determinants:
            return f"dep({phi.determined})"
        return f"dep({' '.join(phi.determinants)} ; {phi.determined})"
    if isinstance(phi, And):
        left, right = _wrap(phi.left, PREC_AND, False), _wrap(phi.right, PREC_AND, True)
        return f"{left} & {right}"
    if isinstance(phi, Or):
        return f"{_wrap(phi.left, PREC_OR, False)} | {_wrap(phi.right, PREC_OR, True)}"
    raise TypeError(f"not a formula: {phi!r}")


def _negation_not_on_atom(instring, loc, _toks):
    raise ParseFatalException(instring, loc, "negation not on atom")


def _fold(cls, toks):
    toks = list(toks)
    result = toks[0]
    for item in toks[1:]:
        result = cls(result, item)
    return result


def _build_grammar():
    """
    Build the pyparsing grammar for formulas.
    """

    lpar, rpar, semi = Suppress("("), Suppress(")"), Suppress(";")
    name = Regex(r"(?!(?:T|F)\b)[A-Za-z_][A-Za-z0-9_]*")
    dep_kw = Suppress(Keyword("dep"))

    top = Keyword("T").set_parse_action(lambda: TOP)
    bot = Keyword("F").set_parse_action(lambda: BOT)
    var = name.copy().set_parse_action(lambda t: Var(t[0]))
    bad_negation = Empty().set_parse_action(_negation_not_on_atom)
    dep_call = Keyword("dep") + Literal("(")
    neg = (Suppress("~") + (~dep_call + name | bad_negation)).set_parse_action(
        lambda t: NegVar(t[0])
    )
    dep_args = lpar + Group(ZeroOrMore(name)) + semi + name + rpar
    dep_full = (dep_kw + dep_args).set_parse_action(
        lambda t: Dep(tuple(t[0]), t[1])
    )
    dep_const = (dep_kw + lpar + name + rpar).set_parse_action(
        lambda t: Dep((), t[0])
    )

    formula = Forward()
    atom = top | bot | dep_full | dep_const | neg | var | (lpar + formula + rpar)
    conj = (atom + ZeroOrMore(Suppress("&") + atom)).set_parse_action(
        lambda t: _fold(And, t)
    )
    disj = (conj + ZeroOrMore(Suppress("|") + conj)).set_parse_action(
        lambda t: _fold(Or, t)
    )
    formula <<= disj
    return formula


GRAMMAR = _build_grammar()


def parse(text):
    """
    Parse concrete syntax into a Formula.

    :raises FormulaSyntaxError: with the 0-based position of the error
    """

    try:
        result = GRAMMAR.parse_string(text, parse_all=True)
    except ParseBaseException as err:
        raise FormulaSyntaxError(err.msg, err.loc) from err
    phi = result[0]
    log.debug("parsed %r as %s", text, phi)
    return phi
