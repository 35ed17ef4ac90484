"""Transforms module - conversions between the two program semantics"""

from .conversions import (
    ChainMode,
    PathSetAnnotation,
    det_to_zs,
    normalize_path_sets,
    ro_det_to_zs,
    ro_zs_to_det,
    prune_unreachable,
)
