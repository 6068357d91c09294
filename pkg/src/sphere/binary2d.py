"""Rank-2 spaces: the canonical ternary product and its 2x2 matrix calculus.

For q = alpha x1^2 + beta x1 x2 + gamma x2^2 there is exactly one trilinear
product satisfying the Kirmse identities; it is written out coordinatewise in
``canonical_ternary``.  Operators are 2x2 matrices stored as row tuples.
"""
from __future__ import annotations

from itertools import product

from .errors import DependentGenerators, RankMismatch
from .linalg import (in_span, mat, mat_add, mat_identity, mat_mul, mat_scale, mat_sub,
                     vcomb)
from .quadratic import QuadraticSpace, parse_form
from .ring import RingSpec, as_ring
from .spherical import TernaryAlgebra


def form_space(form, ring=None) -> QuadraticSpace:
    """Accept a QuadraticSpace, an (alpha, beta, gamma) triple or 'a,b,c'."""
    if isinstance(form, QuadraticSpace):
        if form.rank != 2:
            raise RankMismatch("binary forms have rank 2")
        return form
    if isinstance(form, str):
        return parse_form(form, ring)
    a, b, c = form
    return QuadraticSpace.binary(as_ring(ring or "int"), a, b, c)


def bracket(x, y):
    """Symplectic form [x, y] = x1 y2 - x2 y1."""
    return x[0] * y[1] - x[1] * y[0]


def canonical_ternary(form, x, y, z, ring=None) -> tuple:
    sp = form_space(form, ring)
    R = sp.ring
    a, b, c = sp.binary_coefficients
    x1, x2 = sp.vector(x)
    y1, y2 = sp.vector(y)
    z1, z2 = sp.vector(z)
    first = a * x1 * y1 * z1 + b * x1 * y2 * z1 + c * (x1 * y2 * z2 + x2 * y2 * z1 - x2 * y1 * z2)
    second = c * x2 * y2 * z2 + b * x2 * y1 * z2 + a * (x1 * y1 * z2 + x2 * y1 * z1 - x1 * y2 * z1)
    return R(first), R(second)


def canonical_algebra(form, ring=None) -> TernaryAlgebra:
    sp = form_space(form, ring)
    a, b, c = sp.binary_coefficients
    return TernaryAlgebra.from_function(
        sp, lambda x, y, z: canonical_ternary(sp, x, y, z), f"binary form ({a},{b},{c})")


def via_polarization(form, ring=None) -> TernaryAlgebra:
    """Product <xyz> = b(x,y) z - b(x,z) y + b(y,z) x built from the stored
    (upper triangular) coefficient table b instead of the closed formula."""
    sp = form_space(form, ring)
    R = sp.ring

    def bil(u, v):
        return R(sum(sp.b[i][j] * u[i] * v[j] for i in range(2) for j in range(2)))

    def f(x, y, z):
        return vcomb(R, (bil(x, y), z), (-bil(x, z), y), (bil(y, z), x))

    return TernaryAlgebra.from_function(sp, f, "binary form via b")


# -- 2x2 matrices --------------------------------------------------------------

def trace(M):
    return M[0][0] + M[1][1]


def det(M):
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def adjugate(M, ring=None) -> tuple:
    """X^# = tr(X) I - X."""
    R = as_ring(ring or "int")
    t = R(trace(M))
    return ((R(t - M[0][0]), R(-M[0][1])), (R(-M[1][0]), R(t - M[1][1])))


def spiration_R(form, x, y, ring=None) -> tuple:
    """Matrix of z -> <xyz>."""
    sp = form_space(form, ring)
    E = sp.basis()
    cols = [canonical_ternary(sp, x, y, e) for e in E]
    return tuple(zip(*cols))


def spiflection_S(form, x, z, ring=None) -> tuple:
    """Matrix of y -> <xyz>."""
    sp = form_space(form, ring)
    E = sp.basis()
    cols = [canonical_ternary(sp, x, e, z) for e in E]
    return tuple(zip(*cols))


def basis_R(form, i, j, ring=None):
    """R_ij = R_{e_i, e_j} with 1-based indices."""
    sp = form_space(form, ring)
    E = sp.basis()
    return spiration_R(sp, E[i - 1], E[j - 1])


def basis_S(form, i, j, ring=None):
    sp = form_space(form, ring)
    E = sp.basis()
    return spiflection_S(sp, E[i - 1], E[j - 1])


def spiration_quotient(form, ring=None) -> tuple:
    """(beta, alpha*gamma) such that X = R_12 satisfies X^2 = beta X - alpha gamma.

    The relation is checked on the actual matrices before returning.
    """
    sp = form_space(form, ring)
    R = sp.ring
    a, b, c = sp.binary_coefficients
    if generators_dependent(sp):
        raise DependentGenerators("I and R_12 are linearly dependent over " + str(R))
    X = basis_R(sp, 1, 2)
    lhs = mat_mul(R, X, X)
    rhs = mat_sub(R, mat_scale(R, b, X), mat_scale(R, a * c, mat_identity(R, 2)))
    if lhs != rhs:
        raise ArithmeticError("R_12 does not satisfy its quadratic relation")
    return R(b), R(a * c)


def generators_dependent(sp: QuadraticSpace) -> bool:
    """Is there (s, t) != 0 with s I + t R_12 = 0?  That happens exactly when
    some nonzero t kills alpha, beta and gamma."""
    R = sp.ring
    a, b, c = sp.binary_coefficients
    if R.kind != "zmod":
        return a == 0 and b == 0 and c == 0
    return any(R(t * a) == 0 and R(t * b) == 0 and R(t * c) == 0
               for t in range(1, R.modulus))


def dihedral_generators(form, ring=None) -> list:
    """Spanning matrices of C^R (the R_ij) and C^S (the S_ij)."""
    sp = form_space(form, ring)
    idx = list(product((1, 2), repeat=2))
    return [basis_R(sp, i, j) for i, j in idx], [basis_S(sp, i, j) for i, j in idx]


def in_module(form, M, which="R", ring=None) -> bool:
    """Is M in C^R (which='R'), C^S ('S') or the dihedral algebra ('D')?"""
    sp = form_space(form, ring)
    Rg, Sg = dihedral_generators(sp)
    gens = {"R": Rg, "S": Sg, "D": Rg + Sg}[which]
    flat = [tuple(c for row in g for c in row) for g in gens]
    return in_span(sp.ring, flat, tuple(c for row in M for c in row))


# -- tables -------------------------------------------------------------------

def table1(form, ring=None) -> dict:
    """<e_i e_j e_k> for all index triples (1-based)."""
    sp = form_space(form, ring)
    E = sp.basis()
    return {(i + 1, j + 1, k + 1): canonical_ternary(sp, E[i], E[j], E[k])
            for i, j, k in product(range(2), repeat=3)}


def five_fold(form, idx, bracketing="left", ring=None) -> tuple:
    """<e_i e_j e_k e_l e_m> under one of the three bracketings
    ``left`` <<abc>de>, ``middle`` <a<dcb>e>, ``right`` <ab<cde>>."""
    sp = form_space(form, ring)
    E = sp.basis()
    a, b, c, d, e = (E[i - 1] for i in idx)
    t = lambda x, y, z: canonical_ternary(sp, x, y, z)
    if bracketing == "left":
        return t(t(a, b, c), d, e)
    if bracketing == "middle":
        return t(a, t(d, c, b), e)
    if bracketing == "right":
        return t(a, b, t(c, d, e))
    raise ValueError(f"unknown bracketing {bracketing!r}")


def table2(form, ring=None) -> dict:
    sp = form_space(form, ring)
    return {idx: five_fold(sp, idx, "left") for idx in product((1, 2), repeat=5)}


def s_conjugation(form, e, M, ring=None):
    """X -> S X with S = S_{e,e} / q(e)."""
    sp = form_space(form, ring)
    R = sp.ring
    S = mat_scale(R, R.invert(sp.q(e)), spiflection_S(sp, e, e))
    return mat_mul(R, S, M)


def format_vector(v, names=("e1", "e2")) -> str:
    terms = []
    for c, nm in zip(v, names):
        if c == 0:
            continue
        terms.append(f"{c}*{nm}" if c != 1 else nm)
    return " + ".join(terms) if terms else "0"
