"""Circuit module - leveled IR, circuit compiler and width-5 programs"""

from .gates import (
    InputGate,
    ConstGate,
    NotGate,
    AndGate,
    OrGate,
    Circuit,
    CircuitBuilder,
    eval_circuit,
    circuit_table,
    parse_circuit,
    serialize_circuit,
    load_circuit,
    save_circuit,
)
from .leveled import Route, Query, Pass, LeveledTransitionSystem, levelize_zs, run_lts, width_of_leveled
from .compiler import (
    DEPTH_C,
    DEPTH_C_PRIME,
    CompileReport,
    LevelMap,
    ZsCircuitCompiler,
    compile_with_report,
    compile_zs_to_circuit,
)
from .barrington import barrington
from .translate import formula_to_circuit
