"""Topology of 5-dimensional Seifert bundles over orbifold surfaces, in exact arithmetic."""
from .abgroup import AbGroup, IntMatrix, group_from_presentation, smith_normal_form
from .catalog import catalog, catalog_names
from .errors import ConsistencyError, PreconditionError, Seifert5Error, ValidationError
from .orbsurface import BranchCurve, OrbSurface, SingularPoint
from .seifert import SeifertData, chern_class, cohomology, h1_total_space, is_smooth

__version__ = "0.1.0"

__all__ = [
    "AbGroup",
    "IntMatrix",
    "group_from_presentation",
    "smith_normal_form",
    "catalog",
    "catalog_names",
    "ConsistencyError",
    "PreconditionError",
    "Seifert5Error",
    "ValidationError",
    "BranchCurve",
    "OrbSurface",
    "SingularPoint",
    "SeifertData",
    "chern_class",
    "cohomology",
    "h1_total_space",
    "is_smooth",
]
