"""Unit tests for formulas with the zero-suppression operator."""

import sys
import tempfile
import unittest
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from src.core.exceptions import AssignmentMismatchError, FormulaSyntaxError, ParseError, VarOutOfRangeError
from src.core.program import Assignment
from src.core.truth_table import Family, assignments, gen_family
from src.formula.ast import And, Const, Formula, Not, Or, Var, Zsup, expr_size, has_zsup, to_text, vars_of
from src.formula.evaluator import (
    eval_formula,
    exactly_k_dnf,
    family_dnf,
    family_zsup_form,
    formula_table,
)
from src.formula.parser import MAX_NESTING, load_formula, parse_formula, parse_formula_file, serialize_formula
from src.utils.generators import random_formula


class TestParser(unittest.TestCase):
    """Grammar and error positions."""

    def test_simple_forms(self):
        """Constants, variables, negation, binary forms and Z."""
        self.assertEqual(parse_formula("1", 2).root, Const(1))
        self.assertEqual(parse_formula("x2", 2).root, Var(2))
        self.assertEqual(parse_formula("!x1", 2).root, Not(Var(1)))
        self.assertEqual(parse_formula("(x1 & !x2)", 2).root, And(Var(1), Not(Var(2))))
        self.assertEqual(parse_formula("Z((x1|x2))", 3).root, Zsup(Or(Var(1), Var(2))))

    def test_nested_right_fold(self):
        """The E^3_1 zero-suppressed form parses as a right-nested OR."""
        root = parse_formula("(Z(x1)|(Z(x2)|Z(x3)))", 3).root
        self.assertEqual(root, Or(Zsup(Var(1)), Or(Zsup(Var(2)), Zsup(Var(3)))))

    def test_missing_parenthesis(self):
        """Errors report the offending position."""
        with self.assertRaises(FormulaSyntaxError) as ctx:
            parse_formula("(x1 & x2", 2)
        self.assertEqual(ctx.exception.position, 8)
        self.assertIn("at position 8", str(ctx.exception))

    def test_bad_character(self):
        """Unknown characters are rejected where they occur."""
        with self.assertRaises(FormulaSyntaxError) as ctx:
            parse_formula("(x1 + x2)", 2)
        self.assertEqual(ctx.exception.position, 4)

    def test_trailing_input(self):
        """Input after a complete formula is an error."""
        with self.assertRaises(FormulaSyntaxError) as ctx:
            parse_formula("x1 x2", 2)
        self.assertEqual(ctx.exception.position, 3)

    def test_unparenthesized_binary(self):
        """Binary operators need their parentheses."""
        with self.assertRaises(FormulaSyntaxError):
            parse_formula("x1 & x2", 2)

    def test_nesting_limit(self):
        """Deep formulas are refused with a position; shallower ones still evaluate."""
        with self.assertRaises(FormulaSyntaxError) as ctx:
            parse_formula("!" * 2000 + "x1", 1)
        self.assertEqual(ctx.exception.position, MAX_NESTING)
        deep = parse_formula("!" * (MAX_NESTING - 2) + "x1", 1)
        self.assertEqual(formula_table(deep).to_string(), "01")
        self.assertEqual(vars_of(deep.root), frozenset({1}))

    def test_variable_out_of_range(self):
        """x4 does not exist over three variables."""
        with self.assertRaises(VarOutOfRangeError):
            parse_formula("(x1 | x4)", 3)
        with self.assertRaises(VarOutOfRangeError):
            Formula(Var(0), 3)

    def test_text_round_trip(self):
        """parse(to_text(e)) == e for random formulas."""
        for seed in range(25):
            f = random_formula(seed, n=4, depth=5, allow_zsup=True)
            self.assertEqual(parse_formula(to_text(f.root), 4), f)

    def test_formula_files(self):
        """vars line plus one formula line, through a real file."""
        f = parse_formula("(Z(x1)|x3)", 3)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "f.txt"
            path.write_text(serialize_formula(f), encoding="utf-8")
            self.assertEqual(load_formula(path), f)
        with self.assertRaises(ParseError):
            parse_formula_file("x1\n")
        with self.assertRaises(ParseError):
            parse_formula_file("vars two\nx1\n")


class TestStructure(unittest.TestCase):
    """Syntactic helpers."""

    def test_vars_of(self):
        """E^3_1 mentions x_1, x_2 and x_3; constants mention nothing."""
        self.assertEqual(vars_of(parse_formula("(Z(x1)|(Z(x2)|Z(x3)))", 3).root), {1, 2, 3})
        self.assertEqual(vars_of(Zsup(Const(1))), frozenset())
        self.assertEqual(vars_of(parse_formula("(x1 | !x1)", 3).root), {1})

    def test_size_and_zsup(self):
        """Literal counts and operator detection."""
        root = parse_formula("(Z(x1)|(x2&!x1))", 2).root
        self.assertEqual(expr_size(root), 3)
        self.assertTrue(has_zsup(root))
        self.assertFalse(has_zsup(Not(Var(1))))


class TestEvaluation(unittest.TestCase):
    """Evaluation with the zero-suppression operator."""

    def test_zsup_examples(self):
        """Z(x1) over three variables holds only at 100."""
        f = parse_formula("Z(x1)", 3)
        self.assertEqual(eval_formula(f, Assignment.from_string("100")), 1)
        self.assertEqual(eval_formula(f, Assignment.from_string("110")), 0)
        self.assertEqual(eval_formula(f, Assignment.from_string("000")), 0)

    def test_zsup_of_one(self):
        """Z(1) is the conjunction of negations."""
        for n in range(1, 5):
            f = Formula(Zsup(Const(1)), n)
            self.assertEqual(formula_table(f), gen_family(Family.AND_OF_NEGATIONS, n))

    def test_idempotent(self):
        """Z(Z(g)) = Z(g)."""
        for seed in range(15):
            g = random_formula(seed, n=4, depth=4, allow_zsup=True)
            self.assertEqual(formula_table(Formula(Zsup(Zsup(g.root)), 4)),
                             formula_table(Formula(Zsup(g.root), 4)))

    def test_nested_zsup_uses_whole_universe(self):
        """The inner Z in (Z(x1) & x2) still demands x_2 = 0, so the whole is 0."""
        f = parse_formula("(Z(x1)&x2)", 2)
        self.assertEqual(formula_table(f).to_string(), "0000")

    def test_table_matches_pointwise(self):
        """Vectorized and pointwise evaluation agree."""
        for seed in range(15):
            f = random_formula(seed, n=4, depth=5, allow_zsup=True)
            table = formula_table(f)
            for a in assignments(4):
                self.assertEqual(table[a.index], eval_formula(f, a))

    def test_assignment_mismatch(self):
        """Assignments must match the formula universe."""
        with self.assertRaises(AssignmentMismatchError):
            eval_formula(parse_formula("x1", 2), Assignment.from_string("1"))


class TestFamilyForms(unittest.TestCase):
    """DNF and zero-suppressed family representations."""

    def test_exactly_one_of_three(self):
        """Z form, plain DNF and the family table coincide."""
        zsup = family_zsup_form(Family.EXACTLY_K, 3, 1)
        self.assertEqual(str(zsup), "(Z(x1)|(Z(x2)|Z(x3)))")
        expected = gen_family(Family.EXACTLY_K, 3, 1)
        self.assertEqual(formula_table(zsup), expected)
        self.assertEqual(formula_table(exactly_k_dnf(3, 1)), expected)

    def test_all_families(self):
        """Both representations compute their family."""
        for n in range(1, 6):
            cases = [(Family.CONST1, None), (Family.AND_OF_NEGATIONS, None)]
            cases += [(Family.EXACTLY_K, k) for k in range(n + 1)]
            for family, k in cases:
                expected = gen_family(family, n, k)
                self.assertEqual(formula_table(family_dnf(family, n, k)), expected)
                self.assertEqual(formula_table(family_zsup_form(family, n, k)), expected)

    def test_zsup_form_is_smaller(self):
        """E^4_2 in Z form uses fewer literals than its DNF."""
        self.assertLess(expr_size(family_zsup_form(Family.EXACTLY_K, 4, 2).root),
                        expr_size(family_dnf(Family.EXACTLY_K, 4, 2).root))


def run_tests():
    """Run all tests."""
    unittest.main(verbosity=2)


if __name__ == "__main__":
    run_tests()
