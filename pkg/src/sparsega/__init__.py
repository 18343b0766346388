"""Sparse geometric algebra with per-type generated kernels."""
from .algebra import Algebra
from .blades import BladeNameError, Signature, canonical_order
from .cache import OperatorCache, RegisteredExpression, TraceError
from .domains import DomainError, resolve_domain
from .kernel import KernelIR, format_kernel
from .multivector import MultiVector
from .operators import GenerationError
from .polynomial import Polynomial, RationalExpr, symbols

__all__ = [
    "Algebra",
    "BladeNameError",
    "DomainError",
    "GenerationError",
    "KernelIR",
    "MultiVector",
    "OperatorCache",
    "Polynomial",
    "RationalExpr",
    "RegisteredExpression",
    "Signature",
    "TraceError",
    "canonical_order",
    "format_kernel",
    "resolve_domain",
    "symbols",
]
__version__ = "0.1.0"
