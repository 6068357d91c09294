"""Exact construction and verification of spherical spaces and their loops."""

from .ring import INTEGERS, RATIONALS, RingSpec, ring_eval, zmod
from .quadratic import QuadraticSpace
from .spherical import BinaryAlgebra, TernaryAlgebra, homotope
from .verify import IdentityId, Strategy, VerificationReport, verify
from .loops import FiniteMagma, check_property, sphere_loop
from .catalog import identify, is_isomorphic
from .moufang_double import FiniteGroup, doubling_chain, moufang_double, seed_group

__all__ = [
    "INTEGERS", "RATIONALS", "RingSpec", "ring_eval", "zmod",
    "QuadraticSpace", "BinaryAlgebra", "TernaryAlgebra", "homotope",
    "IdentityId", "Strategy", "VerificationReport", "verify",
    "FiniteMagma", "check_property", "sphere_loop",
    "identify", "is_isomorphic",
    "FiniteGroup", "doubling_chain", "moufang_double", "seed_group",
]
