"""Custom exceptions for the ZSBP toolkit."""

from enum import Enum
from typing import Optional, Dict, Any
from dataclasses import dataclass


class ErrorSeverity(Enum):
    """Error severity levels."""
    WARNING = "warning"     # Result still usable
    ERROR = "error"         # Operation failed
    CRITICAL = "critical"   # Internal invariant broken


class ErrorCategory(Enum):
    """Error categories for grouping."""
    PROGRAM = "program"
    ORACLE = "oracle"
    FORMAT = "format"
    COMPLEXITY = "complexity"
    TRANSFORM = "transform"
    CIRCUIT = "circuit"
    FORMULA = "formula"
    CONFIG = "config"
    VERIFY = "verify"


@dataclass
class ErrorInfo:
    """Rich error information for diagnostics."""

    code: str
    message: str
    category: ErrorCategory
    severity: ErrorSeverity
    recovery_hint: Optional[str] = None
    details: Optional[Dict[str, Any]] = None


class ZsbpError(Exception):
    """Base exception for the toolkit."""

    def __init__(
        self,
        message: str,
        code: str = "UNKNOWN_ERROR",
        category: ErrorCategory = ErrorCategory.PROGRAM,
        severity: ErrorSeverity = ErrorSeverity.ERROR,
        recovery_hint: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message)
        self.info = ErrorInfo(
            code=code,
            message=message,
            category=category,
            severity=severity,
            recovery_hint=recovery_hint,
            details=details or {}
        )

    @property
    def code(self) -> str:
        return self.info.code

    @property
    def details(self) -> Dict[str, Any]:
        return self.info.details

    def __str__(self) -> str:
        return f"[{self.info.code}] {self.info.message}"


# ============== Program Errors ==============

class ProgramError(ZsbpError):
    """Base class for malformed branching programs."""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault('category', ErrorCategory.PROGRAM)
        super().__init__(message, **kwargs)


class CyclicGraphError(ProgramError):
    """The edge relation contains a cycle."""

    def __init__(self, node_id: int):
        super().__init__(
            f"Cycle through node {node_id}",
            code="CYCLIC_GRAPH",
            details={"node_id": node_id}
        )
        self.node_id = node_id


class DanglingReferenceError(ProgramError):
    """An edge points at a node id that does not exist."""

    def __init__(self, node_id: int, target: int):
        super().__init__(
            f"Node {node_id} references missing node {target}",
            code="DANGLING_REFERENCE",
            details={"node_id": node_id, "target": target}
        )
        self.node_id = node_id
        self.target = target


class BadVariableIndexError(ProgramError):
    """Inner node labeled with a variable outside 1..n."""

    def __init__(self, node_id: int, var: int, n: int):
        super().__init__(
            f"Node {node_id} is labeled x{var} but the program declares {n} variables",
            code="BAD_VARIABLE_INDEX",
            recovery_hint="Raise the 'vars' declaration or relabel the node.",
            details={"node_id": node_id, "var": var, "n": n}
        )
        self.node_id = node_id


class MissingStartError(ProgramError):
    """Start node is absent."""

    def __init__(self, node_id: Optional[int]):
        super().__init__(
            f"Start node {node_id} does not exist",
            code="MISSING_START",
            details={"node_id": node_id}
        )
        self.node_id = node_id


class BadSinkValueError(ProgramError):
    """Sink labeled with something other than 0 or 1."""

    def __init__(self, node_id: int, value: Any):
        super().__init__(
            f"Sink {node_id} has value {value!r}, expected 0 or 1",
            code="BAD_SINK_VALUE",
            details={"node_id": node_id, "value": value}
        )
        self.node_id = node_id


class AssignmentMismatchError(ProgramError):
    """Assignment width differs from the program's variable count."""

    def __init__(self, expected: int, got: int):
        super().__init__(
            f"Assignment has {got} variables, expected {expected}",
            code="ASSIGNMENT_MISMATCH",
            details={"expected": expected, "got": got}
        )


class BadParameterError(ProgramError):
    """Invalid parameter for a generator or operation."""

    def __init__(self, message: str, **details):
        super().__init__(message, code="BAD_PARAMETER", details=details)


# ============== Oracle Errors ==============

class OracleError(ZsbpError):
    """Base class for truth-table oracle errors."""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault('category', ErrorCategory.ORACLE)
        super().__init__(message, **kwargs)


class TooManyVariablesError(OracleError):
    """Exhaustive enumeration would exceed the configured cap."""

    def __init__(self, n: int, cap: int):
        super().__init__(
            f"{n} variables exceeds the enumeration cap of {cap}",
            code="TOO_MANY_VARIABLES",
            recovery_hint="Raise the cap in settings or use a smaller instance.",
            details={"n": n, "cap": cap}
        )
        self.n = n
        self.cap = cap


# ============== Format Errors ==============

class FormatError(ZsbpError):
    """Base class for text format errors."""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault('category', ErrorCategory.FORMAT)
        super().__init__(message, **kwargs)


class ParseError(FormatError):
    """Input file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, source: str = ""):
        where = f"{source}:{line}: " if line is not None else (f"{source}: " if source else "")
        super().__init__(
            f"{where}{message}",
            code="PARSE_ERROR",
            details={"line": line, "source": source}
        )
        self.line = line


# ============== Complexity Errors ==============

class ComplexityError(ZsbpError):
    """Base class for decision tree errors."""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault('category', ErrorCategory.COMPLEXITY)
        super().__init__(message, **kwargs)


class NotATreeError(ComplexityError):
    """A decision tree's graph is not a rooted tree."""

    def __init__(self, node_id: int):
        super().__init__(
            f"Node {node_id} has more than one parent",
            code="NOT_A_TREE",
            details={"node_id": node_id}
        )
        self.node_id = node_id


# ============== Transform Errors ==============

class TransformError(ZsbpError):
    """Base class for conversion errors."""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault('category', ErrorCategory.TRANSFORM)
        super().__init__(message, **kwargs)


class NotReadOnceError(TransformError):
    """Some path queries the same variable twice."""

    def __init__(self, node_id: int, var: int):
        super().__init__(
            f"Node {node_id} labeled x{var} reaches another node labeled x{var}",
            code="NOT_READ_ONCE",
            details={"node_id": node_id, "var": var}
        )
        self.node_id = node_id


# ============== Circuit Errors ==============

class CircuitError(ZsbpError):
    """Base class for circuit errors."""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault('category', ErrorCategory.CIRCUIT)
        super().__init__(message, **kwargs)


class MalformedCircuitError(CircuitError):
    """Gate references a later or missing gate."""

    def __init__(self, gate_id: int, reason: str):
        super().__init__(
            f"Gate g{gate_id}: {reason}",
            code="MALFORMED_CIRCUIT",
            details={"gate_id": gate_id}
        )


# ============== Formula Errors ==============

class FormulaError(ZsbpError):
    """Base class for formula errors."""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault('category', ErrorCategory.FORMULA)
        super().__init__(message, **kwargs)


class FormulaSyntaxError(FormulaError):
    """Formula text does not match the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(
            f"{message} at position {position}",
            code="FORMULA_SYNTAX",
            details={"position": position}
        )
        self.position = position


class VarOutOfRangeError(FormulaError):
    """Formula mentions a variable beyond the declared universe."""

    def __init__(self, var: int, n: int):
        super().__init__(
            f"x{var} is outside the universe x1..x{n}",
            code="VAR_OUT_OF_RANGE",
            details={"var": var, "n": n}
        )


class ZsupNotAllowedError(FormulaError):
    """Zero-suppression operator in a context that forbids it."""

    def __init__(self):
        super().__init__(
            "Z(...) is not allowed in this formula",
            code="ZSUP_NOT_ALLOWED",
            recovery_hint="Expand the zero-suppressed subformula before building a permutation program."
        )


# ============== Config Errors ==============

class ConfigError(ZsbpError):
    """Base class for configuration errors."""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault('category', ErrorCategory.CONFIG)
        super().__init__(message, **kwargs)


class ConfigLoadError(ConfigError):
    """Failed to load configuration."""

    def __init__(self, path: str = "", reason: str = ""):
        suffix = f" ({reason})" if reason else ""
        super().__init__(
            f"Failed to load config from: {path}{suffix}",
            code="CONFIG_LOAD_ERROR",
            recovery_hint="Fix or delete the settings file to use defaults.",
            details={"path": path}
        )


class ConfigSaveError(ConfigError):
    """Failed to save configuration."""

    def __init__(self, path: str = ""):
        super().__init__(
            f"Failed to save config to: {path}",
            code="CONFIG_SAVE_ERROR",
            recovery_hint="Check write permissions.",
            details={"path": path}
        )


# ============== Verification Errors ==============

class VerificationError(ZsbpError):
    """Base class for oracle verification failures."""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault('category', ErrorCategory.VERIFY)
        kwargs.setdefault('severity', ErrorSeverity.CRITICAL)
        super().__init__(message, **kwargs)


class EquivalenceFailedError(VerificationError):
    """Two truth tables differ."""

    def __init__(self, what: str, index: int, expected: int, got: int):
        super().__init__(
            f"{what}: tables differ at assignment index {index} (expected {expected}, got {got})",
            code="EQUIVALENCE_FAILED",
            details={"index": index, "expected": expected, "got": got}
        )
        self.index = index
