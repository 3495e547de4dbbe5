"""cutforge: exact final-segment and valuation-ideal arithmetic with a CLI."""

from .errors import CutforgeError
from .lexgroup import GroupElement, GroupSignature, ConvexSubgroup, elem
from .segcalc import FinalSegment, SolveOutcome, seg, principal_seg, solve
from .idealcalc import Ideal, Overring, ValuedField

__all__ = [
    "CutforgeError",
    "GroupSignature",
    "GroupElement",
    "ConvexSubgroup",
    "elem",
    "FinalSegment",
    "SolveOutcome",
    "seg",
    "principal_seg",
    "solve",
    "ValuedField",
    "Ideal",
    "Overring",
]

__version__ = "0.1.0"
