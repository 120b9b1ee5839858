"""Exact Seshadri constants and symplectic packing constants on P1 x P1 blown up at r points."""

__version__ = "0.1.0"

from .errors import DomainError
from .exact import Surd
from .lattice import AmpleBundle, FullClass, SymClass
from .packing import PackingValue, full_packing, nu, unusual_r
from .seshadri import SeshadriValue, epsilon, eta, is_inner

__all__ = [
    "AmpleBundle",
    "DomainError",
    "FullClass",
    "PackingValue",
    "SeshadriValue",
    "Surd",
    "SymClass",
    "epsilon",
    "eta",
    "full_packing",
    "is_inner",
    "nu",
    "unusual_r",
]
