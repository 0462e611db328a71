"""Exact computations with truncated coordinate changes, Taylor cocycles on
affine curve charts, gauge transformations and canonical forms of opers."""

from .curve import Chart, PointQ, RationalFunction
from .errors import DomainError, OperTorsorError, ParseError
from .jetgroup import AutJet, TruncSeries, aut_inverse, aut_mul, compose, decompose, project
from .liealg import B2AdElement, GroupElement, LieRealization, build_sl
from .oper import CanonicalOper, OperConnection, canonicalize, change_coords, gauge_action
from .rings import QQ

__all__ = [
    "QQ",
    "AutJet",
    "B2AdElement",
    "CanonicalOper",
    "Chart",
    "DomainError",
    "GroupElement",
    "LieRealization",
    "OperConnection",
    "OperTorsorError",
    "ParseError",
    "PointQ",
    "RationalFunction",
    "TruncSeries",
    "aut_inverse",
    "aut_mul",
    "build_sl",
    "canonicalize",
    "change_coords",
    "compose",
    "decompose",
    "gauge_action",
    "project",
]
