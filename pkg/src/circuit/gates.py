"""Fan-in-2 Boolean circuits: netlist, builder, evaluation and the .circ format."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.exceptions import AssignmentMismatchError, MalformedCircuitError, ParseError
from ..core.program import Assignment
from ..core.truth_table import DEFAULT_ENUMERATION_CAP, TruthTable, check_cap, index_space

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InputGate:
    var: int


@dataclass(frozen=True)
class ConstGate:
    value: int


@dataclass(frozen=True)
class NotGate:
    a: int


@dataclass(frozen=True)
class AndGate:
    a: int
    b: int


@dataclass(frozen=True)
class OrGate:
    a: int
    b: int


Gate = Union[InputGate, ConstGate, NotGate, AndGate, OrGate]


def _operands(gate: Gate) -> Tuple[int, ...]:
    if isinstance(gate, NotGate):
        return (gate.a,)
    if isinstance(gate, (AndGate, OrGate)):
        return (gate.a, gate.b)
    return ()


@dataclass(frozen=True)
class Circuit:
    """
    Gate DAG in topological order; gate i may only reference gates below i.

    Size and depth are derived from the gate list, never stored.
    """

    n: int
    gates: Tuple[Gate, ...]
    output: int

    def __post_init__(self):
        object.__setattr__(self, 'gates', tuple(self.gates))
        validate_circuit(self)

    @property
    def size(self) -> int:
        return len(self.gates)

    @property
    def depth(self) -> int:
        return gate_depths(self)[self.output]


def validate_circuit(c: Circuit) -> None:
    if not 0 <= c.output < len(c.gates):
        raise MalformedCircuitError(c.output, "output gate does not exist")
    for gate_id, gate in enumerate(c.gates):
        if isinstance(gate, InputGate) and not 1 <= gate.var <= c.n:
            raise MalformedCircuitError(gate_id, f"input x{gate.var} outside x1..x{c.n}")
        if isinstance(gate, ConstGate) and gate.value not in (0, 1):
            raise MalformedCircuitError(gate_id, f"constant {gate.value} is not a bit")
        for operand in _operands(gate):
            if not 0 <= operand < gate_id:
                raise MalformedCircuitError(gate_id, f"operand g{operand} is not an earlier gate")


def gate_depths(c: Circuit) -> List[int]:
    depths: List[int] = []
    for gate in c.gates:
        ops = _operands(gate)
        depths.append(1 + max(depths[o] for o in ops) if ops else 0)
    return depths


class CircuitBuilder:
    """
    Hash-consing gate factory with constant folding.

    Structurally equal gates are shared, so gate ids depend only on the
    order of requests.
    """

    def __init__(self, n: int):
        self.n = n
        self.gates: List[Gate] = []
        self._index: Dict[Gate, int] = {}

    def _add(self, gate: Gate) -> int:
        existing = self._index.get(gate)
        if existing is not None:
            return existing
        self.gates.append(gate)
        gate_id = len(self.gates) - 1
        self._index[gate] = gate_id
        return gate_id

    def const(self, value: int) -> int:
        return self._add(ConstGate(value))

    def input(self, var: int) -> int:
        return self._add(InputGate(var))

    def constant_value(self, g: int) -> Optional[int]:
        gate = self.gates[g]
        return gate.value if isinstance(gate, ConstGate) else None

    def not_(self, a: int) -> int:
        gate = self.gates[a]
        if isinstance(gate, ConstGate):
            return self.const(1 - gate.value)
        if isinstance(gate, NotGate):
            return gate.a
        return self._add(NotGate(a))

    def and_(self, a: int, b: int) -> int:
        ca, cb = self.constant_value(a), self.constant_value(b)
        if ca == 0 or cb == 0:
            return self.const(0)
        if ca == 1:
            return b
        if cb == 1 or a == b:
            return a
        return self._add(AndGate(min(a, b), max(a, b)))

    def or_(self, a: int, b: int) -> int:
        ca, cb = self.constant_value(a), self.constant_value(b)
        if ca == 1 or cb == 1:
            return self.const(1)
        if ca == 0:
            return b
        if cb == 0 or a == b:
            return a
        return self._add(OrGate(min(a, b), max(a, b)))

    def _balanced(self, items: Sequence[int], op, empty: int) -> int:
        items = list(items)
        if not items:
            return self.const(empty)
        while len(items) > 1:
            paired = [op(items[i], items[i + 1]) for i in range(0, len(items) - 1, 2)]
            if len(items) % 2:
                paired.append(items[-1])
            items = paired
        return items[0]

    def and_all(self, items: Sequence[int]) -> int:
        """Balanced AND tree, depth ceil(log2 len)."""
        return self._balanced(items, self.and_, 1)

    def or_all(self, items: Sequence[int]) -> int:
        """Balanced OR tree, depth ceil(log2 len)."""
        return self._balanced(items, self.or_, 0)

    def mux(self, sel: int, if1: int, if0: int) -> int:
        if if1 == if0:
            return if1
        c1, c0 = self.constant_value(if1), self.constant_value(if0)
        if c1 == 1 and c0 == 0:
            return sel
        if c1 == 0 and c0 == 1:
            return self.not_(sel)
        return self.or_(self.and_(sel, if1), self.and_(self.not_(sel), if0))

    def build(self, output: int) -> Circuit:
        """Keep only gates the output depends on and renumber them in order."""
        needed = {output}
        for gate_id in range(output, -1, -1):
            if gate_id in needed:
                needed.update(_operands(self.gates[gate_id]))
        renumber: Dict[int, int] = {}
        gates: List[Gate] = []
        for gate_id in sorted(needed):
            gate = self.gates[gate_id]
            if isinstance(gate, NotGate):
                gate = NotGate(renumber[gate.a])
            elif isinstance(gate, AndGate):
                gate = AndGate(renumber[gate.a], renumber[gate.b])
            elif isinstance(gate, OrGate):
                gate = OrGate(renumber[gate.a], renumber[gate.b])
            renumber[gate_id] = len(gates)
            gates.append(gate)
        return Circuit(self.n, tuple(gates), renumber[output])


# ============== Evaluation ==============

def eval_circuit(c: Circuit, a: Assignment) -> int:
    """Gate-by-gate evaluation in topological order."""
    if a.n != c.n:
        raise AssignmentMismatchError(c.n, a.n)
    values: List[int] = []
    for gate in c.gates:
        if isinstance(gate, InputGate):
            values.append(a[gate.var])
        elif isinstance(gate, ConstGate):
            values.append(gate.value)
        elif isinstance(gate, NotGate):
            values.append(1 - values[gate.a])
        elif isinstance(gate, AndGate):
            values.append(values[gate.a] & values[gate.b])
        else:
            values.append(values[gate.a] | values[gate.b])
    return values[c.output]


def circuit_table(c: Circuit, cap: int = DEFAULT_ENUMERATION_CAP) -> TruthTable:
    """Truth table with every gate evaluated over all assignments at once."""
    check_cap(c.n, cap)
    idx = index_space(c.n)
    values: List[np.ndarray] = []
    for gate in c.gates:
        if isinstance(gate, InputGate):
            values.append(((idx >> (gate.var - 1)) & 1).astype(np.uint8))
        elif isinstance(gate, ConstGate):
            values.append(np.full(idx.size, gate.value, dtype=np.uint8))
        elif isinstance(gate, NotGate):
            values.append(1 - values[gate.a])
        elif isinstance(gate, AndGate):
            values.append(values[gate.a] & values[gate.b])
        else:
            values.append(values[gate.a] | values[gate.b])
    return TruthTable(c.n, values[c.output])


# ============== .circ format ==============

def serialize_circuit(c: Circuit) -> str:
    lines = [f"inputs {c.n}"]
    for gate_id, gate in enumerate(c.gates):
        if isinstance(gate, InputGate):
            body = f"INPUT x{gate.var}"
        elif isinstance(gate, ConstGate):
            body = f"CONST {gate.value}"
        elif isinstance(gate, NotGate):
            body = f"NOT g{gate.a}"
        elif isinstance(gate, AndGate):
            body = f"AND g{gate.a} g{gate.b}"
        else:
            body = f"OR g{gate.a} g{gate.b}"
        lines.append(f"g{gate_id} = {body}")
    lines.append(f"output g{c.output}")
    return "\n".join(lines) + "\n"


def _ref(token: str, prefix: str, line_no: int, source: str) -> int:
    if not token.startswith(prefix) or not token[len(prefix):].isdigit():
        raise ParseError(f"expected {prefix}<int>, got {token!r}", line_no, source)
    return int(token[len(prefix):])


def parse_circuit(text: str, source: str = "<string>") -> Circuit:
    """Parse a .circ netlist; gates must appear as g0, g1, ... in order."""
    n: Optional[int] = None
    output: Optional[int] = None
    gates: List[Gate] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "inputs" and len(parts) == 2 and parts[1].isdigit():
            n = int(parts[1])
            continue
        if parts[0] == "output" and len(parts) == 2:
            output = _ref(parts[1], "g", line_no, source)
            continue
        if len(parts) < 3 or parts[1] != "=":
            raise ParseError(f"malformed line {line!r}", line_no, source)
        gate_id = _ref(parts[0], "g", line_no, source)
        if gate_id != len(gates):
            raise ParseError(f"expected g{len(gates)}, got g{gate_id}", line_no, source)
        op, args = parts[2], parts[3:]
        arity = {"INPUT": 1, "CONST": 1, "NOT": 1, "AND": 2, "OR": 2}.get(op)
        if arity is None or len(args) != arity:
            raise ParseError(f"bad gate {' '.join(parts[2:])!r}", line_no, source)
        if op == "INPUT":
            gates.append(InputGate(_ref(args[0], "x", line_no, source)))
        elif op == "CONST":
            if args[0] not in ("0", "1"):
                raise ParseError(f"constant must be 0 or 1, got {args[0]!r}", line_no, source)
            gates.append(ConstGate(int(args[0])))
        elif op == "NOT":
            gates.append(NotGate(_ref(args[0], "g", line_no, source)))
        elif op == "AND":
            gates.append(AndGate(_ref(args[0], "g", line_no, source), _ref(args[1], "g", line_no, source)))
        else:
            gates.append(OrGate(_ref(args[0], "g", line_no, source), _ref(args[1], "g", line_no, source)))
    if n is None or output is None:
        raise ParseError("missing 'inputs' or 'output' line", source=source)
    return Circuit(n, tuple(gates), output)


def load_circuit(path: Union[str, Path]) -> Circuit:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", source=str(path))
    return parse_circuit(text, source=str(path))


def save_circuit(c: Circuit, path: Union[str, Path]) -> None:
    Path(path).write_text(serialize_circuit(c), encoding="utf-8")
    logger.info(f"Wrote circuit with {c.size} gates to {path}")
