"""Exact census of circles through triples of a planar point set."""

from ._core import (
    DuplicatePoints,
    EngineDisagreement,
    EvenSize,
    HalvingError,
    InadmissiblePath,
    NonRationalNumber,
    NotGeneralPosition,
    ParseError,
    PointSet,
    census,
    check_general_position,
    circumcenter_param,
    classify_circle,
    count_halving,
    count_pair_halving,
    find_crossings,
    gen_gon_config,
    gen_random,
    in_circle,
    orientation,
    render_svg,
    verify_gon_recursion,
    verify_pair_odd,
    verify_path_invariance,
    verify_theorem1,
    verify_theorem2,
)

__all__ = [
    "DuplicatePoints",
    "EngineDisagreement",
    "EvenSize",
    "HalvingError",
    "InadmissiblePath",
    "NonRationalNumber",
    "NotGeneralPosition",
    "ParseError",
    "PointSet",
    "census",
    "check_general_position",
    "circumcenter_param",
    "classify_circle",
    "count_halving",
    "count_pair_halving",
    "find_crossings",
    "gen_gon_config",
    "gen_random",
    "in_circle",
    "orientation",
    "render_svg",
    "verify_gon_recursion",
    "verify_pair_odd",
    "verify_path_invariance",
    "verify_theorem1",
    "verify_theorem2",
]
