"""
teams.py

Valuations, teams, classical evaluation and exact team-semantics model
checking for propositional dependence logic, plus model enumeration over
small variable sets.

A team over the ordered domain N is stored as a bitmask of length 2^|N|:
bit i is set iff the valuation whose bit string (first variable most
significant) has integer value i is a member.

Created on 17 Oct 2026

@author: teampref contributors
"""

from dataclasses import dataclass
from logging import getLogger

from teampref.exceptions import DomainError, NotFlatError
from teampref.formula import And, Bot, Dep, NegVar, Or, Top, Var, formula_vars
from teampref.globals import EMPTY_TEAM, MAX_TEAM_SIZE, MAX_VARS
from teampref.helpers import (
    bits_to_int,
    bitstring,
    check_guard,
    int_to_bits,
    iter_bits,
    popcount,
    submasks,
)

log = getLogger(__name__)


@dataclass(frozen=True)
class Valuation:
    """
    Valuation class. bits[i] is the value of domain[i].
    """

    domain: tuple
    bits: tuple

    def __post_init__(self):
        if len(self.domain) != len(self.bits):
            raise DomainError(
                f"valuation has {len(self.bits)} bits for {len(self.domain)} variables"
            )

    @classmethod
    def parse(cls, text, domain):
        """
        Valuation from its bit string, e.g. '101'.
        """

        domain = tuple(domain)
        text = text.strip()
        if len(text) != len(domain) or any(c not in "01" for c in text):
            raise DomainError(
                f"'{text}' is not a valuation over {' '.join(domain)}"
            )
        return cls(domain, tuple(int(c) for c in text))

    @classmethod
    def from_int(cls, value, domain):
        """
        Valuation whose bit string has integer value value.
        """

        domain = tuple(domain)
        return cls(domain, int_to_bits(value, len(domain)))

    @property
    def value(self):
        """
        Integer value of the bit string.
        """

        return bits_to_int(self.bits)

    def __getitem__(self, name):
        try:
            return self.bits[self.domain.index(name)]
        except ValueError as err:
            raise DomainError(f"unbound variable {name}") from err

    def __str__(self):
        return bitstring(self.bits)


@dataclass(frozen=True)
class Team:
    """
    Team class - a set of valuations over a common domain.
    """

    domain: tuple
    mask: int = 0

    @classmethod
    def from_valuations(cls, valuations, domain):
        """
        Team from an iterable of Valuations or bit strings. Duplicates collapse.
        """

        domain = tuple(domain)
        mask = 0
        for val in valuations:
            if isinstance(val, str):
                val = Valuation.parse(val, domain)
            elif tuple(val.domain) != domain:
                raise DomainError(
                    f"valuation over {list(val.domain)} in team over {list(domain)}"
                )
            mask |= 1 << val.value
        return cls(domain, mask)

    @classmethod
    def full(cls, domain):
        """
        The team of all valuations over domain.
        """

        domain = tuple(domain)
        return cls(domain, (1 << (1 << len(domain))) - 1)

    def valuations(self):
        """
        Members in ascending bit-string order.
        """

        return [Valuation.from_int(i, self.domain) for i in iter_bits(self.mask)]

    def __len__(self):
        return popcount(self.mask)

    def __contains__(self, val):
        return bool(self.mask >> val.value & 1)

    def issubset(self, other):
        """
        Subteam test.
        """

        return self.mask & ~other.mask == 0

    def subteams(self):
        """
        All subteams, largest first.
        """

        return [Team(self.domain, sub) for sub in submasks(self.mask)]

    def __str__(self):
        return format_team(self)


def parse_team(text, domain):
    """
    Parse a team literal: comma-separated bit strings, or '-' for the empty team.
    """

    domain = tuple(domain)
    text = text.strip()
    if text in ("", EMPTY_TEAM):
        return Team(domain, 0)
    return Team.from_valuations([row for row in text.split(",")], domain)


def format_team(team):
    """
    Inverse of parse_team; members are listed in ascending order.
    """

    if not team.mask:
        return EMPTY_TEAM
    return ",".join(str(val) for val in team.valuations())


def all_teams(domain, max_vars=MAX_VARS):
    """
    Every team over domain in ascending mask order.
    """

    domain = tuple(domain)
    check_guard(len(domain), max_vars, "|N|")
    for mask in range(1 << (1 << len(domain))):
        yield Team(domain, mask)


def var_masks(domain):
    """
    For each variable, the mask of valuations making it true.
    """

    width = len(domain)
    size = 1 << width
    masks = {}
    for i, name in enumerate(domain):
        shift = width - 1 - i
        masks[name] = sum(1 << v for v in range(size) if v >> shift & 1)
    return masks


def _check_bound(phi, domain):
    unbound = formula_vars(phi) - set(domain)
    if unbound:
        raise DomainError(f"unbound variable(s) {', '.join(sorted(unbound))}")


def classical_mask(phi, domain, _masks=None):
    """
    Mask of the valuations over domain that classically satisfy the PL formula phi.
    """

    masks = _masks if _masks is not None else var_masks(domain)
    full = Team.full(domain).mask
    if isinstance(phi, Var):
        if phi.name not in masks:
            raise DomainError(f"unbound variable {phi.name}")
        return masks[phi.name]
    if isinstance(phi, NegVar):
        if phi.name not in masks:
            raise DomainError(f"unbound variable {phi.name}")
        return full ^ masks[phi.name]
    if isinstance(phi, Top):
        return full
    if isinstance(phi, Bot):
        return 0
    if isinstance(phi, And):
        return classical_mask(phi.left, domain, masks) & classical_mask(
            phi.right, domain, masks
        )
    if isinstance(phi, Or):
        return classical_mask(phi.left, domain, masks) | classical_mask(
            phi.right, domain, masks
        )
    if isinstance(phi, Dep):
        raise NotFlatError(f"dependence atom {phi} in classical evaluation")
    raise TypeError(f"not a formula: {phi!r}")


def eval_classical(val, phi):
    """
    Classical truth of the PL formula phi under valuation val.
    """

    if isinstance(phi, (Var, NegVar)):
        bit = val[phi.name]
        return bool(bit) if isinstance(phi, Var) else not bit
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Bot):
        return False
    if isinstance(phi, And):
        return eval_classical(val, phi.left) and eval_classical(val, phi.right)
    if isinstance(phi, Or):
        return eval_classical(val, phi.left) or eval_classical(val, phi.right)
    if isinstance(phi, Dep):
        raise NotFlatError(f"dependence atom {phi} in classical evaluation")
    raise TypeError(f"not a formula: {phi!r}")


def dependence_holds(mask, domain, atom):
    """
    True if every two members agreeing on the determinants agree on the
    determined variable.
    """

    width = len(domain)
    index = {name: i for i, name in enumerate(domain)}
    shifts = [width - 1 - index[name] for name in atom.determinants]
    target = width - 1 - index[atom.determined]
    seen = {}
    for v in iter_bits(mask):
        key = tuple(v >> s & 1 for s in shifts)
        bit = v >> target & 1
        if seen.setdefault(key, bit) != bit:
            return False
    return True


class TeamEvaluator:
    """
    Team-semantics model checker for one formula over one domain.

    Flat subformulas are decided by a single mask test. Disjunctions with a
    dependence atom below them search Y over the subteams of X with the
    complement X\\Y as the other half of the cover. Results are memoized
    on (subformula, team mask).
    """

    def __init__(self, phi, domain, max_team_size=MAX_TEAM_SIZE):
        """
        Constructor
        """

        self.phi = phi
        self.domain = tuple(domain)
        self.max_team_size = max_team_size
        _check_bound(phi, self.domain)
        self._masks = var_masks(self.domain)
        self._flat = {}
        self._memo = {}

    def _flat_mask(self, node):
        """
        Classical mask of node if node is flat, else None.
        """

        key = id(node)
        if key not in self._flat:
            if isinstance(node, Dep):
                self._flat[key] = None
            elif isinstance(node, (And, Or)):
                left = self._flat_mask(node.left)
                right = self._flat_mask(node.right)
                if left is None or right is None:
                    self._flat[key] = None
                elif isinstance(node, And):
                    self._flat[key] = left & right
                else:
                    self._flat[key] = left | right
            else:
                self._flat[key] = classical_mask(node, self.domain, self._masks)
        return self._flat[key]

    def holds(self, mask, node=None):
        """
        X |= node, with X given by its mask.
        """

        node = self.phi if node is None else node
        flat = self._flat_mask(node)
        if flat is not None:
            return mask & ~flat == 0
        key = (id(node), mask)
        if key in self._memo:
            return self._memo[key]
        if isinstance(node, Dep):
            result = dependence_holds(mask, self.domain, node)
        elif isinstance(node, And):
            result = self.holds(mask, node.left) and self.holds(mask, node.right)
        else:
            check_guard(popcount(mask), self.max_team_size, "|X|")
            result = any(
                self.holds(sub, node.left) and self.holds(mask ^ sub, node.right)
                for sub in submasks(mask)
            )
        self._memo[key] = result
        return result


def eval_team(team, phi, max_team_size=MAX_TEAM_SIZE):
    """
    X |= phi under team semantics.

    :raises DomainError: if phi mentions a variable outside dom(X)
    :raises GuardError: if a split search is needed on a team above max_team_size
    """

    return TeamEvaluator(phi, team.domain, max_team_size).holds(team.mask)


def eval_team_naive(team, phi):
    """
    Reference evaluator: direct reading of the semantic clauses, with a
    disjunction cover enumerated over the three placements of each member
    (left only, right only, both).
    """

    _check_bound(phi, team.domain)
    return _naive(team.valuations(), phi)


def _naive(members, phi):
    if isinstance(phi, (Var, NegVar, Top)):
        return all(eval_classical(val, phi) for val in members)
    if isinstance(phi, Bot):
        return not members
    if isinstance(phi, And):
        return _naive(members, phi.left) and _naive(members, phi.right)
    if isinstance(phi, Dep):
        return all(
            val[phi.determined] == other[phi.determined]
            for val in members
            for other in members
            if all(val[a] == other[a] for a in phi.determinants)
        )
    if isinstance(phi, Or):
        count = len(members)
        for code in range(3**count):
            left, right = [], []
            for val in members:
                code, place = divmod(code, 3)
                if place != 1:
                    left.append(val)
                if place != 0:
                    right.append(val)
            if _naive(left, phi.left) and _naive(right, phi.right):
                return True
        return False
    raise TypeError(f"not a formula: {phi!r}")


def model_masks(phi, domain, max_vars=MAX_VARS, max_team_size=MAX_TEAM_SIZE):
    """
    Masks of all teams over domain satisfying phi, ascending.
    """

    domain = tuple(domain)
    check_guard(len(domain), max_vars, "|N|")
    evaluator = TeamEvaluator(phi, domain, max_team_size)
    found = [mask for mask in range(1 << (1 << len(domain))) if evaluator.holds(mask)]
    log.debug("%s has %d team models over %s", phi, len(found), list(domain))
    return found


def models_of(phi, domain, max_vars=MAX_VARS, max_team_size=MAX_TEAM_SIZE):
    """
    All teams over domain satisfying phi, in ascending mask order.
    """

    domain = tuple(domain)
    return [Team(domain, m) for m in model_masks(phi, domain, max_vars, max_team_size)]


def logical_counterexample(phi, psi, domain, max_vars=MAX_VARS):
    """
    First team (in mask order) satisfying phi but not psi, or None.
    """

    domain = tuple(domain)
    check_guard(len(domain), max_vars, "|N|")
    left = TeamEvaluator(phi, domain)
    right = TeamEvaluator(psi, domain)
    for mask in range(1 << (1 << len(domain))):
        if left.holds(mask) and not right.holds(mask):
            return Team(domain, mask)
    return None


def entails_logical(phi, psi, domain, max_vars=MAX_VARS):
    """
    phi |=^t psi: every team model of phi over domain is a team model of psi.
    """

    return logical_counterexample(phi, psi, domain, max_vars) is None


def entails_classical(phi, psi, domain):
    """
    Classical consequence between PL formulas over domain.
    """

    domain = tuple(domain)
    masks = var_masks(domain)
    return classical_mask(phi, domain, masks) & ~classical_mask(psi, domain, masks) == 0
