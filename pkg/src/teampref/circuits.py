"""
circuits.py

Boolean circuits over AND, OR, NOT and the constants 0 and 1, with fan-in
at most 2. A circuit is a list of named inputs, a topologically ordered
list of gates, each referring only to earlier wires, and an ordered list
of output wires.

Netlist format, one item per line, '#' starts a comment:

    input a
    gate g = AND a b      (also OR a b, NOT a, CONST 0, CONST 1)
    output g

Created on 17 Oct 2026

@author: teampref contributors
"""

from dataclasses import dataclass
from logging import getLogger

from pyparsing import (
    Group,
    Keyword,
    OneOrMore,
    ParseBaseException,
    Regex,
    Suppress,
    one_of,
)

from teampref.exceptions import CircuitError
from teampref.globals import LEX, NONSTRICT, RLEX, STRICT

log = getLogger(__name__)

AND = "AND"
OR = "OR"
NOT = "NOT"
CONST = "CONST"
ARITY = {AND: 2, OR: 2, NOT: 1, CONST: 1}


@dataclass(frozen=True)
class Gate:
    """
    One gate. For CONST, args holds the constant value.
    """

    name: str
    op: str
    args: tuple


class Circuit:
    """
    Circuit class. Validated on construction and compiled to an
    index-based program for evaluation.
    """

    def __init__(self, inputs, gates, outputs):
        """
        Constructor

        :raises CircuitError: on duplicate names, undefined wires or forward references
        """

        self.inputs = tuple(inputs)
        self.gates = tuple(gates)
        self.outputs = tuple(outputs)

        defined = list(self.inputs) + [gate.name for gate in self.gates]
        seen = set()
        for name in defined:
            if name in seen:
                raise CircuitError(f"duplicate name {name}")
            seen.add(name)

        wires = {name: i for i, name in enumerate(self.inputs)}
        self._program = []
        for gate in self.gates:
            if gate.op not in ARITY or len(gate.args) != ARITY[gate.op]:
                raise CircuitError(f"bad gate {gate.name}: {gate.op} {gate.args}")
            if gate.op == CONST:
                if gate.args[0] not in (0, 1):
                    raise CircuitError(f"bad constant in gate {gate.name}")
                self._program.append((CONST, gate.args[0], None))
            else:
                refs = [self._wire(wires, seen, arg) for arg in gate.args]
                self._program.append((gate.op, refs[0], refs[-1]))
            wires[gate.name] = len(wires)
        self._outputs = [self._wire(wires, seen, name) for name in self.outputs]

    @staticmethod
    def _wire(wires, seen, name):
        if name in wires:
            return wires[name]
        if name in seen:
            raise CircuitError(f"cycle: forward reference to {name}")
        raise CircuitError(f"undefined wire {name}")

    def __len__(self):
        return len(self.gates)

    def evaluate(self, bits):
        """
        Output bits for one input assignment.
        """

        if len(bits) != len(self.inputs):
            raise CircuitError(
                f"circuit has {len(self.inputs)} inputs, got {len(bits)} bits"
            )
        values = [1 if b else 0 for b in bits]
        for op, first, second in self._program:
            if op == AND:
                values.append(values[first] & values[second])
            elif op == OR:
                values.append(values[first] | values[second])
            elif op == NOT:
                values.append(1 - values[first])
            else:
                values.append(first)
        return tuple(values[i] for i in self._outputs)


def eval_circuit(circuit, bits):
    """
    Evaluate circuit on the input bits (in input order).
    """

    return circuit.evaluate(bits)


class CircuitBuilder:
    """
    CircuitBuilder class - accumulates gates, sharing structurally equal
    unnamed gates, and builds wide AND/OR gates as balanced trees.
    """

    def __init__(self, inputs=()):
        """
        Constructor
        """

        self.inputs = []
        self.gates = []
        self._names = set()
        self._cache = {}
        self._counter = 0
        for name in inputs:
            self.add_input(name)

    def add_input(self, name):
        """
        Declare an input wire.
        """

        if name in self._names:
            raise CircuitError(f"duplicate name {name}")
        self._names.add(name)
        self.inputs.append(name)
        return name

    def _fresh(self):
        while True:
            name = f"g{self._counter}"
            self._counter += 1
            if name not in self._names:
                return name

    def gate(self, op, args, name=None):
        """
        Add a gate and return its wire name.
        """

        key = (op, tuple(args))
        if name is None and key in self._cache:
            return self._cache[key]
        if name is None:
            name = self._fresh()
        elif name in self._names:
            raise CircuitError(f"duplicate name {name}")
        self._names.add(name)
        self.gates.append(Gate(name, op, tuple(args)))
        self._cache.setdefault(key, name)
        return name

    def const(self, value, name=None):
        return self.gate(CONST, (1 if value else 0,), name)

    def not_(self, wire, name=None):
        return self.gate(NOT, (wire,), name)

    def and_(self, left, right, name=None):
        return self.gate(AND, (left, right), name)

    def or_(self, left, right, name=None):
        return self.gate(OR, (left, right), name)

    def and_all(self, wires, name=None):
        """
        Balanced AND over wires; the empty AND is CONST 1.
        """

        wires = list(wires)
        if not wires:
            return self.const(1, name)
        return self._wide(AND, wires, name)

    def or_all(self, wires, name=None):
        """
        Balanced OR over wires; the empty OR is CONST 0.
        """

        wires = list(wires)
        if not wires:
            return self.const(0, name)
        return self._wide(OR, wires, name)

    def _wide(self, op, wires, name):
        if len(wires) == 1:
            if name is None:
                return wires[0]
            # a named single-wire result needs a gate of its own
            return self.gate(op, (wires[0], wires[0]), name)
        mid = len(wires) // 2
        left = self._wide(op, wires[:mid], None)
        right = self._wide(op, wires[mid:], None)
        return self.gate(op, (left, right), name)

    def eq(self, left, right):
        """
        (a & b) | (~a & ~b)
        """

        return self.or_(
            self.and_(left, right), self.and_(self.not_(left), self.not_(right))
        )

    def gt(self, left, right):
        """
        a & ~b
        """

        return self.and_(left, self.not_(right))

    def build(self, outputs):
        """
        Circuit with the given output wires.
        """

        return Circuit(self.inputs, self.gates, outputs)


def lex_inputs(width, prefix):
    """
    Input names of one block in string order: most significant bit first.
    """

    return [f"{prefix}{i}" for i in range(width - 1, -1, -1)]


def build_lex_circuit(width, variant=LEX, strictness=STRICT, with_def=False):
    """
    Lexicographic comparison of two bit strings a, b of length width.

    Inputs are a then b, each block in string order (a{n-1} ... a0, the
    leftmost bit is the most significant). lex/strict outputs a <lex b,
    lex/nonstrict outputs a <=lex b; rlex compares with the blocks swapped.
    with_def adds a leading CONST 1 output named def.
    """

    if width < 1:
        raise ValueError(f"lex circuit width must be positive, got {width}")
    if variant not in (LEX, RLEX) or strictness not in (STRICT, NONSTRICT):
        raise ValueError(f"unknown lex circuit variant {variant}/{strictness}")
    builder = CircuitBuilder(lex_inputs(width, "a") + lex_inputs(width, "b"))
    outputs = [builder.const(1, "def")] if with_def else []
    first, second = ("a", "b") if variant == LEX else ("b", "a")

    def bit(prefix, i):
        return f"{prefix}{i}"

    equal = {j: builder.eq(bit(first, j), bit(second, j)) for j in range(width)}

    def decided_at(high, low):
        # high_i > low_i and all more significant bits agree
        return [
            builder.and_all(
                [builder.gt(bit(high, i), bit(low, i))]
                + [equal[j] for j in range(i + 1, width)]
            )
            for i in range(width)
        ]

    if strictness == STRICT:
        result = builder.or_all(decided_at(second, first), "lt")
    else:
        greater = builder.or_all(decided_at(first, second))
        result = builder.not_(greater, "le")
    outputs.append(result)
    circuit = builder.build(outputs)
    log.debug(
        "%s/%s circuit of width %d: %d gates", variant, strictness, width, len(circuit)
    )
    return circuit


def identity_circuit(inputs, with_def=True):
    """
    Circuit passing its inputs through, optionally behind a CONST 1 def output.
    """

    builder = CircuitBuilder(inputs)
    outputs = [builder.const(1, "def")] if with_def else []
    return builder.build(outputs + list(inputs))


def _build_netlist_grammar():
    """
    One grammar per netlist line.
    """

    ident = Regex(r"[A-Za-z_][A-Za-z0-9_]*")
    binary = (Keyword(AND) | Keyword(OR)) + ident + ident
    unary = Keyword(NOT) + ident
    const = Keyword(CONST) + one_of("0 1")
    input_line = Keyword("input") + ident
    gate_line = Keyword("gate") + ident + Suppress("=") + Group(binary | unary | const)
    output_line = Keyword("output") + Group(OneOrMore(ident))
    return input_line | gate_line | output_line


NETLIST_LINE = _build_netlist_grammar()


def parse_netlist(text):
    """
    Circuit from netlist text.

    :raises CircuitError: on syntax errors, undefined wires, duplicates or
        forward references
    """

    inputs, gates, outputs = [], [], None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            toks = NETLIST_LINE.parse_string(line, parse_all=True)
        except ParseBaseException as err:
            raise CircuitError(f"line {lineno}: {err.msg}") from err
        if toks[0] == "input":
            inputs.append(toks[1])
        elif toks[0] == "gate":
            op, *args = list(toks[2])
            if op == CONST:
                args = [int(args[0])]
            gates.append(Gate(toks[1], op, tuple(args)))
        else:
            if outputs is not None:
                raise CircuitError(f"line {lineno}: second output line")
            outputs = list(toks[1])
    return Circuit(inputs, gates, outputs or [])


def load_netlist(filename):
    """
    Read a netlist file.
    """

    with open(filename, "r", encoding="utf-8") as infile:
        return parse_netlist(infile.read())


def print_netlist(circuit):
    """
    Netlist text for circuit.
    """

    lines = [f"input {name}" for name in circuit.inputs]
    for gate in circuit.gates:
        args = " ".join(str(arg) for arg in gate.args)
        lines.append(f"gate {gate.name} = {gate.op} {args}")
    if circuit.outputs:
        lines.append("output " + " ".join(circuit.outputs))
    return "\n".join(lines) + "\n"
