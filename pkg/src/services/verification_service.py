"""Oracle equivalence checks run after conversions and compilations."""

import logging
from typing import Optional

from ..circuit.gates import Circuit, circuit_table
from ..core.exceptions import EquivalenceFailedError
from ..core.program import BranchingProgram, Semantics
from ..core.truth_table import TruthTable, truth_table
from ..formula.ast import Formula
from ..formula.evaluator import formula_table
from .settings_service import OracleSettings

logger = logging.getLogger(__name__)


def require_equal(what: str, expected: TruthTable, got: TruthTable) -> None:
    """
    Raises:
        EquivalenceFailedError: with the lowest differing assignment index
    """
    index = expected.first_difference(got)
    if index is not None:
        raise EquivalenceFailedError(what, index, expected[index], got[index])


class VerificationService:
    """
    Exhaustive checks bounded by the oracle settings.

    Every check returns True when it ran and passed, False when it was
    skipped because n exceeds verify_cap; failures raise.
    """

    def __init__(self, settings: Optional[OracleSettings] = None):
        self.settings = settings or OracleSettings()

    def should_verify(self, n: int) -> bool:
        return n <= self.settings.verify_cap

    def _skip(self, what: str, n: int) -> bool:
        if self.should_verify(n):
            return False
        logger.warning(f"Skipping {what} verification: n={n} exceeds verify cap {self.settings.verify_cap}")
        return True

    def _table(self, bp: BranchingProgram, semantics: Semantics) -> TruthTable:
        return truth_table(bp, semantics, cap=self.settings.enumeration_cap, workers=self.settings.workers)

    def programs(self, source: BranchingProgram, source_semantics: Semantics,
                 result: BranchingProgram, result_semantics: Semantics) -> bool:
        """source under source_semantics computes what result computes under result_semantics."""
        what = f"{source_semantics.value} -> {result_semantics.value}"
        if self._skip(what, source.n):
            return False
        require_equal(what, self._table(source, source_semantics), self._table(result, result_semantics))
        logger.info(f"Verified {what} on all {1 << source.n} assignments")
        return True

    def compilation(self, source: BranchingProgram, circuit: Circuit) -> bool:
        if self._skip("compile", source.n):
            return False
        require_equal("zs -> circuit", self._table(source, Semantics.ZS),
                      circuit_table(circuit, cap=self.settings.enumeration_cap))
        logger.info(f"Verified circuit on all {1 << source.n} assignments")
        return True

    def formula_program(self, f: Formula, bp: BranchingProgram, semantics: Semantics = Semantics.DET) -> bool:
        if self._skip("formula", f.n):
            return False
        require_equal(f"formula -> {semantics.value}", formula_table(f, cap=self.settings.enumeration_cap),
                      self._table(bp, semantics))
        return True
