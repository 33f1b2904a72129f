"""critline: mixed moments of a Hecke L-function against zeta squared on the critical line."""
from .kernels import BACKEND

__all__ = ["BACKEND"]
__version__ = "0.1.0"
