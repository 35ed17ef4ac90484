"""Core module - Branching programs, truth tables, formats, exceptions"""

from .program import (
    Assignment,
    BranchingProgram,
    Inner,
    Sink,
    ProgramBuilder,
    Semantics,
    validate,
    eval_det,
    eval_zs,
    evaluate,
    size,
    width,
    reachable,
    is_read_once,
)
from .truth_table import TruthTable, Family, truth_table, gen_family, family_program
from .formats import parse_bp, serialize_bp, load_program, save_program, parse_table, serialize_table
from .exceptions import *
