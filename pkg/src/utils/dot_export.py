"""
Graphviz DOT export for branching programs and circuits.

Rendering is left to dot, e.g. `dot -Tpng -O program.dot`. Nodes are
written one per line in id order so exports diff cleanly.
"""

import logging
from pathlib import Path
from typing import List, Union

from ..circuit.gates import AndGate, Circuit, ConstGate, InputGate, NotGate
from ..core.program import BranchingProgram, Sink

logger = logging.getLogger(__name__)


def program_to_dot(bp: BranchingProgram, name: str = "program") -> str:
    """0-edges dashed, 1-edges solid, sinks as boxes, start doubly circled."""
    lines: List[str] = [f"digraph {name} {{"]
    for node_id, node in bp.nodes.items():
        if isinstance(node, Sink):
            lines.append(f'\t"{node_id}" [label="{node.value}", shape=box];')
        else:
            shape = "doublecircle" if node_id == bp.start else "circle"
            lines.append(f'\t"{node_id}" [label="x{node.var}", shape={shape}];')
    for node_id, node in bp.inner_items():
        lines.append(f'\t"{node_id}" -> "{node.lo}" [style=dashed];')
        lines.append(f'\t"{node_id}" -> "{node.hi}" [style=solid];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def circuit_to_dot(c: Circuit, name: str = "circuit") -> str:
    lines: List[str] = [f"digraph {name} {{", "\trankdir=BT;"]
    edges: List[str] = []
    for gate_id, gate in enumerate(c.gates):
        if isinstance(gate, InputGate):
            label, shape = f"x{gate.var}", "plaintext"
        elif isinstance(gate, ConstGate):
            label, shape = str(gate.value), "box"
        elif isinstance(gate, NotGate):
            label, shape = "NOT", "invtriangle"
            edges.append(f'\t"g{gate.a}" -> "g{gate_id}";')
        else:
            label, shape = ("AND" if isinstance(gate, AndGate) else "OR"), "ellipse"
            edges.append(f'\t"g{gate.a}" -> "g{gate_id}";')
            edges.append(f'\t"g{gate.b}" -> "g{gate_id}";')
        if gate_id == c.output:
            shape = "doubleoctagon"
        lines.append(f'\t"g{gate_id}" [label="{label}", shape={shape}];')
    lines.extend(edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(obj: Union[BranchingProgram, Circuit], path: Union[str, Path]) -> None:
    text = program_to_dot(obj) if isinstance(obj, BranchingProgram) else circuit_to_dot(obj)
    Path(path).write_text(text, encoding="utf-8")
    logger.info(f"Wrote DOT for {type(obj).__name__} to {path}")
