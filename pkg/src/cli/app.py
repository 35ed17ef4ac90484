"""
Command-line surface of the toolkit.

Reports go to stdout as stable line-oriented text; diagnostics and logs go
to stderr. Exit codes: 0 success, 1 module error or failed check, 2 usage.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, TextIO

from ..circuit.barrington import barrington
from ..circuit.compiler import compile_with_report
from ..circuit.gates import load_circuit, save_circuit
from ..core.exceptions import BadParameterError, ZsbpError
from ..core.formats import load_program, save_program, serialize_bp, serialize_table
from ..core.program import Assignment, Semantics, evaluate, find_read_once_violation, size, width
from ..core.truth_table import Family, TruthTable, family_program, gen_family, truth_table
from ..dtree.complexity import d_complexity, z_complexity
from ..formula.evaluator import family_dnf, family_zsup_form
from ..formula.parser import load_formula, serialize_formula
from ..services.bench_service import family_rows, format_family_rows, format_scaling, width_scaling
from ..services.settings_service import SettingsService, ToolkitSettings
from ..services.verification_service import VerificationService, require_equal
from ..transforms.conversions import det_to_zs, prune_unreachable, ro_det_to_zs, ro_zs_to_det
from ..utils.dot_export import export_dot

logger = logging.getLogger(__name__)

# mode -> (conversion, source semantics, result semantics)
CONVERSIONS = {
    "det2zs": (det_to_zs, Semantics.DET, Semantics.ZS),
    "ro-det2zs": (ro_det_to_zs, Semantics.DET, Semantics.ZS),
    "ro-zs2det": (ro_zs_to_det, Semantics.ZS, Semantics.DET),
}


def parse_range(text: str) -> List[int]:
    """'2..8' -> [2, ..., 8]; a single integer is a one-element range."""
    try:
        if ".." in text:
            lo, hi = (int(part) for part in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <int> or <int>..<int>, got {text!r}")
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or non-positive range {text!r}")
    return list(range(lo, hi + 1))


def parse_doubling(text: str) -> List[int]:
    """'4..256' -> [4, 8, ..., 256]."""
    bounds = parse_range(text)
    values, value = [], bounds[0]
    while value <= bounds[-1]:
        values.append(value)
        value *= 2
    return values


FAMILIES = [f.value for f in Family]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors instead of exiting."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zsbp", description="Branching programs under deterministic and zero-suppressed semantics.")
    parser.add_argument("--config", type=Path, help="settings JSON file")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="override logging.level")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate a program at one assignment")
    p.add_argument("--in", dest="inp", type=Path, required=True)
    p.add_argument("--semantics", type=Semantics, choices=list(Semantics), required=True, metavar="{det,zs}")
    p.add_argument("--assignment", required=True, help="bits x1 first, e.g. 101")

    p = sub.add_parser("table", help="print a program's truth table")
    p.add_argument("--in", dest="inp", type=Path, required=True)
    p.add_argument("--semantics", type=Semantics, choices=list(Semantics), required=True, metavar="{det,zs}")

    p = sub.add_parser("convert", help="convert between semantics")
    p.add_argument("--mode", choices=sorted(CONVERSIONS), required=True)
    p.add_argument("--in", dest="inp", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--prune", action="store_true", help="drop nodes unreachable from start")
    p.add_argument("--no-verify", action="store_true")

    p = sub.add_parser("compile", help="compile a zero-suppressed program to a circuit")
    p.add_argument("--in", dest="inp", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--report", action="store_true")
    p.add_argument("--no-verify", action="store_true")

    p = sub.add_parser("barrington", help="width-5 program for a formula")
    p.add_argument("--formula", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--no-verify", action="store_true")

    p = sub.add_parser("complexity", help="exact D(f) or Z(f)")
    p.add_argument("--measure", choices=["d", "z"], required=True)
    p.add_argument("--table", required=True, help="truth table bits, index 0 first")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--witness", type=Path, help="write an optimal tree here")

    p = sub.add_parser("check", help="read-once or equivalence check")
    p.add_argument("--in", dest="inp", type=Path, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--read-once", action="store_true")
    group.add_argument("--equiv", type=Path, metavar="OTHER")
    p.add_argument("--semantics", type=Semantics, choices=list(Semantics), default=Semantics.DET, metavar="{det,zs}")
    p.add_argument("--other-semantics", type=Semantics, choices=list(Semantics), metavar="{det,zs}",
                   help="semantics of OTHER (defaults to --semantics)")

    p = sub.add_parser("gen", help="generate a named family")
    p.add_argument("--family", type=Family, choices=list(Family), required=True, metavar="{" + ",".join(FAMILIES) + "}")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--k", type=int)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--as-table", action="store_true")
    group.add_argument("--as-dnf", action="store_true")
    group.add_argument("--as-zsup", action="store_true")
    p.add_argument("--out", type=Path, help="write here instead of stdout")

    p = sub.add_parser("export-dot", help="DOT for a program or circuit")
    p.add_argument("--in", dest="inp", type=Path, required=True, help=".bp or .circ")
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("bench", help="size/depth comparison")
    p.add_argument("--family", choices=FAMILIES + ["width5"], required=True)
    p.add_argument("--vars", type=parse_range, default=None, help="range like 2..8")
    p.add_argument("--k", type=int)
    p.add_argument("--levels", type=parse_doubling, default=None, help="doubling range like 4..256 (width5)")
    p.add_argument("--seed", type=int, default=0)

    return parser


class CommandRunner:
    """Executes one parsed command against loaded settings."""

    def __init__(self, settings: ToolkitSettings, out: TextIO):
        self.settings = settings
        self.out = out
        self.verifier = VerificationService(settings.oracle)
        self._handlers: Dict[str, Callable[[argparse.Namespace], int]] = {
            "eval": self.cmd_eval,
            "table": self.cmd_table,
            "convert": self.cmd_convert,
            "compile": self.cmd_compile,
            "barrington": self.cmd_barrington,
            "complexity": self.cmd_complexity,
            "check": self.cmd_check,
            "gen": self.cmd_gen,
            "export-dot": self.cmd_export_dot,
            "bench": self.cmd_bench,
        }

    def dispatch(self, args: argparse.Namespace) -> int:
        return self._handlers[args.command](args)

    def emit(self, text: str) -> None:
        self.out.write(text if text.endswith("\n") else text + "\n")

    def _table(self, bp, semantics: Semantics) -> TruthTable:
        oracle = self.settings.oracle
        return truth_table(bp, semantics, cap=oracle.enumeration_cap, workers=oracle.workers)

    def _verify(self, args: argparse.Namespace) -> bool:
        return self.settings.compile.verify and not args.no_verify

    # ---- commands ----

    def cmd_eval(self, args) -> int:
        bp = load_program(args.inp)
        a = Assignment.from_string(args.assignment)
        self.emit(str(evaluate(bp, a, args.semantics)))
        return 0

    def cmd_table(self, args) -> int:
        bp = load_program(args.inp)
        self.emit(self._table(bp, args.semantics).to_string())
        return 0

    def cmd_convert(self, args) -> int:
        convert, source_sem, result_sem = CONVERSIONS[args.mode]
        bp = load_program(args.inp)
        result = convert(bp)
        if args.prune:
            result = prune_unreachable(result)
        if self._verify(args):
            self.verifier.programs(bp, source_sem, result, result_sem)
        save_program(result, args.out, comment=f"{args.mode} of {args.inp.name}")
        self.emit(f"{args.mode}: size {size(bp)} -> {size(result)}")
        return 0

    def cmd_compile(self, args) -> int:
        bp = load_program(args.inp)
        circuit, report = compile_with_report(bp)
        if self._verify(args):
            self.verifier.compilation(bp, circuit)
        save_circuit(circuit, args.out)
        if args.report:
            self.emit(report.to_text())
        return 0

    def cmd_barrington(self, args) -> int:
        f = load_formula(args.formula)
        bp = barrington(f)
        if self._verify(args):
            self.verifier.formula_program(f, bp)
        save_program(bp, args.out, comment=f"width-5 program for {args.formula.name}")
        self.emit(f"size = {size(bp)}\nwidth = {width(bp)}")
        return 0

    def cmd_complexity(self, args) -> int:
        tt = TruthTable.from_string(args.table, args.vars)
        cap = self.settings.complexity.max_vars
        result = d_complexity(tt, cap=cap) if args.measure == "d" else z_complexity(tt, cap=cap)
        if args.witness:
            save_program(result.witness.program, args.witness,
                         comment=f"optimal {args.measure.upper()} tree, depth {result.value}")
        self.emit(f"{args.measure.upper()} = {result.value}")
        return 0

    def cmd_check(self, args) -> int:
        bp = load_program(args.inp)
        if args.read_once:
            violation = find_read_once_violation(bp)
            if violation is None:
                self.emit("read-once")
                return 0
            node_id, var = violation
            self.emit(f"not read-once: node {node_id} can reach another node labeled x{var}")
            return 1
        other = load_program(args.equiv)
        if other.n != bp.n:
            raise BadParameterError(f"{args.equiv.name} has {other.n} variables, {args.inp.name} has {bp.n}",
                                    n=bp.n, other_n=other.n)
        other_sem = args.other_semantics or args.semantics
        require_equal(f"{args.inp.name} vs {args.equiv.name}",
                      self._table(bp, args.semantics), self._table(other, other_sem))
        self.emit(f"equivalent ({args.semantics.value} vs {other_sem.value}, {1 << bp.n} assignments)")
        return 0

    def cmd_gen(self, args) -> int:
        if args.as_table:
            text = serialize_table(gen_family(args.family, args.vars, args.k))
        elif args.as_dnf:
            text = serialize_formula(family_dnf(args.family, args.vars, args.k))
        elif args.as_zsup:
            text = serialize_formula(family_zsup_form(args.family, args.vars, args.k))
        else:
            text = serialize_bp(family_program(args.family, args.vars, args.k),
                                comment=f"{args.family.value} n={args.vars}")
        if args.out:
            args.out.write_text(text, encoding="utf-8")
        else:
            self.emit(text)
        return 0

    def cmd_export_dot(self, args) -> int:
        obj = load_circuit(args.inp) if args.inp.suffix == ".circ" else load_program(args.inp)
        export_dot(obj, args.out)
        return 0

    def cmd_bench(self, args) -> int:
        if args.family == "width5":
            report = width_scaling(args.levels or parse_doubling("4..256"), seed=args.seed)
            self.emit(format_scaling(report))
            return 0
        rows = family_rows(Family(args.family), args.vars or parse_range("2..8"), args.k,
                           complexity_cap=self.settings.complexity.max_vars)
        self.emit(format_family_rows(rows))
        return 0


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """Parse argv, run one command, return the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _UsageError:
        return 2
    except SystemExit as e:  # --help
        return int(e.code or 0)

    try:
        service = SettingsService(args.config)
        service.load()
        settings = service.get_all()
        logging.getLogger().setLevel(args.log_level or settings.logging.level)
        return CommandRunner(settings, out).dispatch(args)
    except ZsbpError as e:
        logger.error(f"Command failed: {e.info.category.value} {e.details}")
        err.write(f"error: {e}\n")
        return 1
    except OSError as e:
        logger.error(f"Command failed: {e}")
        err.write(f"error: {e.strerror}: {e.filename}\n")
        return 1
