"""
exceptions.py

teampref exception hierarchy. Everything raised deliberately by the
library derives from TeamPrefError, so the CLI can report it and exit 2.

Created on 17 Oct 2026

@author: teampref contributors
"""


class TeamPrefError(Exception):
    """
    Base class for all teampref errors.
    """


class FormulaSyntaxError(TeamPrefError):
    """
    Formula text does not conform to the grammar.
    """

    def __init__(self, message, position=0):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class NotFlatError(TeamPrefError):
    """
    Dependence atom found where a PL formula is required.
    """


class DomainError(TeamPrefError):
    """
    Unbound variable, variable-domain mismatch or bad valuation width.
    """


class GuardError(TeamPrefError):
    """
    Enumeration guard exceeded.
    """


class OrderError(TeamPrefError):
    """
    Relation is not a strict partial order.
    """


class ModelError(TeamPrefError):
    """
    Malformed preferential or succinct model.
    """


class CircuitError(TeamPrefError):
    """
    Malformed circuit or netlist.
    """
