"""nscurve: exact invariants of non-smooth regular plane curves over F_3(t),
Frobenius descent of ideals, and the three quartic families."""

from . import errors
from .branch import BranchParam, PowerSeriesTrunc, hn_parametrize, value_set
from .descent import IdealPresentation, OneTypeResult, one_type, trace, x_quotient
from .families import FamilyMember, are_equivalent, classify, make, verify_member
from .fppoly import BACKEND
from .invariants import InvariantsReport, SemigroupData, full_report
from .plane import AffinePoly, HomPoly, ProjMap, ProjPoint
from .tower import KCoordinates, PrimeScalar, TowerScalar

__version__ = "0.1.0"

__all__ = [
    "AffinePoly",
    "BACKEND",
    "BranchParam",
    "FamilyMember",
    "HomPoly",
    "IdealPresentation",
    "InvariantsReport",
    "KCoordinates",
    "OneTypeResult",
    "PowerSeriesTrunc",
    "PrimeScalar",
    "ProjMap",
    "ProjPoint",
    "SemigroupData",
    "TowerScalar",
    "are_equivalent",
    "classify",
    "errors",
    "full_report",
    "hn_parametrize",
    "make",
    "one_type",
    "trace",
    "value_set",
    "verify_member",
    "x_quotient",
]
