"""Text formats for branching programs (.bp) and truth tables."""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Union

from .exceptions import ParseError
from .program import BranchingProgram, Inner, Node, Sink, validate
from .truth_table import TruthTable

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _int(token: str, line_no: int, source: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line_no, source)
    if value < 0:
        raise ParseError(f"expected a nonnegative integer, got {value}", line_no, source)
    return value


def parse_bp(text: str, source: str = "<string>") -> BranchingProgram:
    """
    Parse the line-oriented .bp format and validate the result.

    Lines: `vars <n>`, `inner <id> <var> <lo> <hi>`, `sink <id> <0|1>`,
    `start <id>`; `#` starts a comment.
    """
    n: Optional[int] = None
    start: Optional[int] = None
    nodes: Dict[int, Node] = {}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        parts = line.split()
        keyword, args = parts[0], parts[1:]
        expected = {"vars": 1, "inner": 4, "sink": 2, "start": 1}.get(keyword)
        if expected is None:
            raise ParseError(f"unknown directive {keyword!r}", line_no, source)
        if len(args) != expected:
            raise ParseError(f"{keyword} takes {expected} argument(s), got {len(args)}", line_no, source)
        values = [_int(tok, line_no, source) for tok in args]

        if keyword == "vars":
            if n is not None:
                raise ParseError("duplicate vars declaration", line_no, source)
            n = values[0]
        elif keyword == "start":
            if start is not None:
                raise ParseError("duplicate start declaration", line_no, source)
            start = values[0]
        else:
            node_id = values[0]
            if node_id in nodes:
                raise ParseError(f"duplicate node id {node_id}", line_no, source)
            if keyword == "inner":
                nodes[node_id] = Inner(values[1], values[2], values[3])
            else:
                if values[1] not in (0, 1):
                    raise ParseError(f"sink value must be 0 or 1, got {values[1]}", line_no, source)
                nodes[node_id] = Sink(values[1])

    if n is None:
        raise ParseError("missing vars declaration", source=source)
    if start is None:
        raise ParseError("missing start declaration", source=source)

    bp = BranchingProgram(n, nodes, start)
    validate(bp)
    logger.debug(f"Parsed {source}: n={n}, {len(nodes)} nodes")
    return bp


def serialize_bp(bp: BranchingProgram, comment: Optional[str] = None) -> str:
    lines: List[str] = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"vars {bp.n}")
    for node_id, node in bp.nodes.items():
        if isinstance(node, Inner):
            lines.append(f"inner {node_id} {node.var} {node.lo} {node.hi}")
        else:
            lines.append(f"sink {node_id} {node.value}")
    lines.append(f"start {bp.start}")
    return "\n".join(lines) + "\n"


def load_program(path: PathLike) -> BranchingProgram:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", source=str(path))
    return parse_bp(text, source=str(path))


def save_program(bp: BranchingProgram, path: PathLike, comment: Optional[str] = None) -> None:
    Path(path).write_text(serialize_bp(bp, comment), encoding="utf-8")
    logger.info(f"Wrote program with {len(bp.nodes)} nodes to {path}")


# ============== Truth tables ==============

def parse_table(text: str, source: str = "<string>") -> TruthTable:
    """Parse `vars <n>` followed by a 2^n-character 0/1 string."""
    lines = [_strip_comment(raw) for raw in text.splitlines()]
    lines = [line for line in lines if line]
    if len(lines) != 2 or not lines[0].startswith("vars"):
        raise ParseError("expected 'vars <n>' and one bit string", source=source)
    parts = lines[0].split()
    if len(parts) != 2:
        raise ParseError("malformed vars declaration", 1, source)
    n = _int(parts[1], 1, source)
    bits = lines[1]
    if len(bits) != 1 << n or any(ch not in "01" for ch in bits):
        raise ParseError(f"expected {1 << n} bits of 0/1", 2, source)
    return TruthTable.from_string(bits, n)


def serialize_table(tt: TruthTable) -> str:
    return f"vars {tt.n}\n{tt.to_string()}\n"
