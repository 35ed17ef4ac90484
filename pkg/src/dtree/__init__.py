"""Decision tree module - exact D(f) and Z(f) with witness trees"""

from .complexity import (
    DecisionTree,
    ComplexityResult,
    DEFAULT_COMPLEXITY_CAP,
    check_tree,
    d_complexity,
    z_complexity,
    eval_witness,
)
