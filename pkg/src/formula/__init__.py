"""Formula module - formulas with the zero-suppression operator"""

from .ast import Const, Var, Not, And, Or, Zsup, Expr, Formula, vars_of, has_zsup, expr_size, to_text
from .parser import FormulaParser, parse_formula, parse_formula_file, load_formula, serialize_formula
from .evaluator import eval_formula, formula_table, exactly_k_dnf, family_dnf, family_zsup_form
