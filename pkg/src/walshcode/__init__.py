"""Exact-arithmetic linear codes from bent and plateaued functions over
finite fields, their subfield codes and weight distributions, bound and
minimality verdicts, and CSS transversal-gate checks."""

__version__ = "0.1.0"

from .cyclo import CycInt
from .galois import FieldCtx, field_new
from .functions import FnSpec

__all__ = ["CycInt", "FieldCtx", "field_new", "FnSpec", "__version__"]
