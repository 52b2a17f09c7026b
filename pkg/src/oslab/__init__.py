"""Finite-dimensional laboratory for twisted operator-space tensor norms,
elementary operators, Hochschild 2-cocycles and Fourier algebras of finite groups."""
from .errors import InvalidInput

__version__ = "0.1.0"
__all__ = ["InvalidInput", "__version__"]
