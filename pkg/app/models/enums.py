from enum import Enum


class InputKind(str, Enum):
    """Which side of the polar duality an input polytope lives on."""

    FANO_POLYTOPE = "fano_polytope"
    MOMENT_POLYTOPE = "moment_polytope"


class EnumerationMethod(str, Enum):
    """Engines for H-to-V and V-to-H conversion."""

    SUBSETS = "subsets"
    DOUBLE_DESCRIPTION = "double_description"


class ApexRule(str, Enum):
    """Which vertex of each face a pulling triangulation cones from."""

    LEX_MIN = "lex_min"
    LEX_MAX = "lex_max"


class CheckStatus(str, Enum):
    """Outcome of one acceptance check."""

    PASS = "PASS"
    FAIL = "FAIL"
    REPORT = "REPORT"
