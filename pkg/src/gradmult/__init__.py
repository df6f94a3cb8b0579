"""Exact mixed multiplicities of graded families of monomial ideals."""

from .monomial import AmbientRing, MonomialIdeal, normalize
from .length import colength, module_colength, relative_length
from .families import (
    GradedFamily,
    IntegralClosurePowers,
    Powers,
    Product,
    Saturation,
    Scaled,
    SymbolicPowers,
    Table,
    Truncated,
)
from .multiplicity import (
    MultiplicityTable,
    evaluate_G,
    general_mixed_multiplicities,
    mixed_multiplicities,
)
from .limits import (
    LimitEstimate,
    family_G_value,
    family_mixed_multiplicities,
    general_family_G_value,
    general_family_mixed_multiplicities,
)
from .report import CheckReport

__version__ = "0.1.0"

__all__ = [
    "AmbientRing",
    "MonomialIdeal",
    "normalize",
    "colength",
    "module_colength",
    "relative_length",
    "GradedFamily",
    "IntegralClosurePowers",
    "Powers",
    "Product",
    "Saturation",
    "Scaled",
    "SymbolicPowers",
    "Table",
    "Truncated",
    "MultiplicityTable",
    "evaluate_G",
    "general_mixed_multiplicities",
    "mixed_multiplicities",
    "LimitEstimate",
    "family_G_value",
    "family_mixed_multiplicities",
    "general_family_G_value",
    "general_family_mixed_multiplicities",
    "CheckReport",
]
