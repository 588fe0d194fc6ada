"""Equivariant Dirac operators on SU_q(l+1) and the odd quantum spheres."""
from ._backend import NAME as backend
from .qarith import QParam, Scalar, q_binom, q_int, weyl_q_dimension

__version__ = "0.1.0"

__all__ = ["QParam", "Scalar", "q_int", "q_binom", "weyl_q_dimension", "backend", "__version__"]
