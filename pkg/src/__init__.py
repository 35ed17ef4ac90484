"""ZSBP Toolkit - deterministic and zero-suppressed branching programs"""

__version__ = "1.0.0"
__author__ = "ZSBP Toolkit"
