from .certificate import StabilityCertificate
from .enums import ApexRule, CheckStatus, EnumerationMethod, InputKind
from .families import MoriRelationReport, RelationCheck, XrSpec
from .halfspace import Halfspace
from .polytope import Polytope
from .potential import AffinePotential, CriterionResult, MabuchiResult, PLIntegrals, SimplePLFunction
from .simplex import AffineForm, QuadraticIntegrand, Simplex

__all__ = [
    "AffineForm",
    "AffinePotential",
    "ApexRule",
    "CheckStatus",
    "CriterionResult",
    "EnumerationMethod",
    "Halfspace",
    "InputKind",
    "MabuchiResult",
    "MoriRelationReport",
    "PLIntegrals",
    "Polytope",
    "QuadraticIntegrand",
    "RelationCheck",
    "SimplePLFunction",
    "Simplex",
    "StabilityCertificate",
    "XrSpec",
]
