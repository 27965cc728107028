"""Finite-model engine for fractoconvexities over n-ary convexities."""

from ._core import (
    Convexity,
    Fractoconvexity,
    FractoError,
    GroundSpace,
    Registry,
    build_zline,
    check_prop4,
    conically_independent,
    enumerate_members,
    evaluate,
    family_equal,
    independence_domain,
    join,
    load_space,
    load_space_file,
    meet,
    normalize,
    pair_hull,
    parse,
)

__all__ = [
    "Convexity",
    "Fractoconvexity",
    "FractoError",
    "GroundSpace",
    "Registry",
    "build_zline",
    "check_prop4",
    "conically_independent",
    "enumerate_members",
    "evaluate",
    "family_equal",
    "independence_domain",
    "join",
    "load_space",
    "load_space_file",
    "meet",
    "normalize",
    "pair_hull",
    "parse",
]
