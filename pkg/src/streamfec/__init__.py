"""Rate-optimal streaming erasure codes for burst-plus-random packet loss."""

from .codespec import CodeSpec, ParamSet
from .fields import FieldElement, make_field, make_quadratic_extension

__version__ = "0.1.0"

__all__ = [
    "CodeSpec",
    "ParamSet",
    "FieldElement",
    "make_field",
    "make_quadratic_extension",
    "__version__",
]
