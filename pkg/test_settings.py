"""Unit tests for settings and oracle verification services."""

import json
import sys
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

sys.path.insert(0, str(Path(__file__).parent))

from src.core.exceptions import ConfigLoadError, EquivalenceFailedError
from src.core.program import BranchingProgram, Inner, Semantics, Sink
from src.core.truth_table import TruthTable
from src.circuit.compiler import compile_zs_to_circuit
from src.formula.parser import parse_formula
from src.services.settings_service import OracleSettings, SettingsService, ToolkitSettings
from src.services.verification_service import VerificationService, require_equal
from src.transforms.conversions import det_to_zs


class TestSettingsService(unittest.TestCase):
    """JSON settings with environment overrides."""

    def setUp(self):
        """Set up test fixtures."""
        self._tmp = tempfile.TemporaryDirectory()
        self.path = Path(self._tmp.name) / "settings.json"
        self.service = SettingsService(self.path)

    def tearDown(self):
        self._tmp.cleanup()

    def test_defaults(self):
        """Without a file the defaults apply."""
        with patch.dict("os.environ", {}, clear=True):
            self.assertFalse(self.service.load())
        self.assertEqual(self.service.get("oracle.enumeration_cap"), 20)
        self.assertEqual(self.service.get("oracle.verify_cap"), 12)
        self.assertEqual(self.service.get("complexity.max_vars"), 5)
        self.assertTrue(self.service.get("compile.verify"))

    def test_load_file(self):
        """Sections in the file override defaults; missing ones keep them."""
        self.path.write_text(json.dumps({"oracle": {"verify_cap": 8}}), encoding="utf-8")
        self.assertTrue(self.service.load(use_env=False))
        self.assertEqual(self.service.get("oracle.verify_cap"), 8)
        self.assertEqual(self.service.get("oracle.workers"), 1)

    def test_bad_json(self):
        """Unreadable settings raise ConfigLoadError."""
        self.path.write_text("{not json", encoding="utf-8")
        with self.assertRaises(ConfigLoadError):
            self.service.load(use_env=False)

    def test_unknown_field(self):
        """Unknown fields in a section are rejected."""
        self.path.write_text(json.dumps({"oracle": {"colour": "red"}}), encoding="utf-8")
        with self.assertRaises(ConfigLoadError):
            self.service.load(use_env=False)

    def test_env_override(self):
        """ZSBP_* variables win over the file."""
        self.path.write_text(json.dumps({"oracle": {"workers": 2}}), encoding="utf-8")
        with patch.dict("os.environ", {"ZSBP_WORKERS": "6", "ZSBP_LOG_LEVEL": "debug"}):
            self.service.load()
        self.assertEqual(self.service.get("oracle.workers"), 6)
        self.assertEqual(self.service.get("logging.level"), "DEBUG")

    def test_bad_env_value(self):
        """Non-numeric caps are refused."""
        with patch.dict("os.environ", {"ZSBP_VERIFY_CAP": "many"}):
            with self.assertRaises(ConfigLoadError):
                self.service.load()

    def test_save_round_trip(self):
        """Saved settings load back."""
        self.service.set("oracle.verify_cap", 9)
        self.service.set("complexity.max_vars", 4)
        self.assertTrue(self.service.save())
        other = SettingsService(self.path)
        other.load(use_env=False)
        self.assertEqual(other.get("oracle.verify_cap"), 9)
        self.assertEqual(other.get("complexity.max_vars"), 4)
        self.assertFalse(self.path.with_suffix(".tmp").exists())

    def test_get_set(self):
        """Dot keys; unknown keys fall back or are ignored."""
        self.assertEqual(self.service.get("oracle.missing", "x"), "x")
        self.service.set("oracle.missing", 3)
        self.service.set("nowhere.workers", 3)
        self.assertIsNone(self.service.get("oracle.missing"))

    def test_callbacks(self):
        """Listeners see changes until they unregister."""
        seen = []
        unregister = self.service.on_change(lambda key, value: seen.append((key, value)))
        self.service.set("oracle.workers", 3)
        unregister()
        self.service.set("oracle.workers", 4)
        self.assertEqual(seen, [("oracle.workers", 3)])

    def test_reset(self):
        """Reset restores defaults."""
        self.service.set("oracle.workers", 8)
        self.service.reset_to_defaults()
        self.assertEqual(self.service.get_all(), ToolkitSettings())


class TestVerificationService(unittest.TestCase):
    """Bounded oracle checks."""

    def setUp(self):
        """Set up test fixtures."""
        self.bp = BranchingProgram(3, {0: Inner(1, 1, 2), 1: Sink(0), 2: Sink(1)}, 0)
        self.verifier = VerificationService(OracleSettings(verify_cap=4))

    def test_conversion_verified(self):
        """det_to_zs passes the cross-semantics check."""
        self.assertTrue(self.verifier.programs(self.bp, Semantics.DET, det_to_zs(self.bp), Semantics.ZS))

    def test_mismatch_reports_index(self):
        """The lowest differing assignment is reported."""
        with self.assertRaises(EquivalenceFailedError) as ctx:
            self.verifier.programs(self.bp, Semantics.DET, self.bp, Semantics.ZS)
        self.assertEqual(ctx.exception.index, 3)

    def test_require_equal(self):
        """Equal tables pass silently."""
        require_equal("same", TruthTable.from_string("0110"), TruthTable.from_string("0110"))
        with self.assertRaises(EquivalenceFailedError):
            require_equal("differs", TruthTable.from_string("0110"), TruthTable.from_string("0111"))

    def test_skipped_above_cap(self):
        """Large programs are not enumerated."""
        bp = BranchingProgram(5, {0: Sink(1)}, 0)
        with self.assertLogs("src.services.verification_service", level="WARNING"):
            self.assertFalse(self.verifier.programs(bp, Semantics.DET, bp, Semantics.DET))

    def test_compilation_and_formula(self):
        """Circuit and formula checks."""
        self.assertTrue(self.verifier.compilation(self.bp, compile_zs_to_circuit(self.bp)))
        self.assertTrue(self.verifier.formula_program(parse_formula("x1", 3), self.bp))


def run_tests():
    """Run all tests."""
    unittest.main(verbosity=2)


if __name__ == "__main__":
    run_tests()
