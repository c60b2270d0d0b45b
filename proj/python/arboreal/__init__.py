"""Tree automorphisms, orders and conjugacy."""

from ._arboreal import (
    CapExceeded,
    Element,
    NotBounded,
    ParseError,
    System,
    classify,
    conjugate_in_aut,
    conjugate_in_pol0,
    orbit_signalizer,
    orbit_tree_code,
    order,
    random_bounded,
    run,
    verify_conjugator,
)

__all__ = [
    "CapExceeded",
    "Element",
    "NotBounded",
    "ParseError",
    "System",
    "classify",
    "conjugate_in_aut",
    "conjugate_in_pol0",
    "orbit_signalizer",
    "orbit_tree_code",
    "order",
    "random_bounded",
    "run",
    "verify_conjugator",
]
