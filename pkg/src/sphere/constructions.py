"""Recipes that build new spaces and algebras from old ones.

Everything returns either a ``TernaryAlgebra`` (with its quadratic form
recorded) or a ``BinaryAlgebra``.  Doubling always takes an explicit side;
there is no default convention.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

import numpy as np

from .binary2d import basis_R, form_space, generators_dependent
from .errors import DependentGenerators, RankMismatch
from .linalg import mat_mul, mat_vec, vcomb
from .quadratic import QuadraticSpace
from .ring import RingSpec, as_ring
from .spherical import BinaryAlgebra, TernaryAlgebra, inner_operator
from .verify import VerificationReport

SIDES = ("left", "right")


@dataclass(frozen=True)
class DoublingParams:
    mu: object
    side: str

    def __post_init__(self):
        if self.side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}, got {self.side!r}")


def _params(mu, side):
    if isinstance(mu, DoublingParams):
        return mu
    if side is None:
        raise ValueError("a doubling side (left or right) must be given")
    return DoublingParams(mu, side)


def _split(v, n):
    return tuple(v[:n]), tuple(v[n:])


# -- extended Minkowski / Laguerre spaces ---------------------------------------

def minkowski_extension(ring, n: int, phi, psi) -> TernaryAlgebra:
    """<xyz> = phi(x) psi(y) z + psi(z) phi(y) x - phi(x) psi(z) y on K^n,
    with q(x) = phi(x) psi(x)."""
    R = as_ring(ring)
    phi = tuple(R(c) for c in phi)
    psi = tuple(R(c) for c in psi)
    if len(phi) != n or len(psi) != n:
        raise RankMismatch(f"phi and psi must have length {n}")
    space = QuadraticSpace(R, [[phi[i] * psi[j] for j in range(n)] for i in range(n)])

    def lin(f, x):
        return R(sum(a * b for a, b in zip(f, x)))

    def f(x, y, z):
        return vcomb(R, (lin(phi, x) * lin(psi, y), z), (lin(psi, z) * lin(phi, y), x),
                     (-lin(phi, x) * lin(psi, z), y))

    return TernaryAlgebra.from_function(space, f, f"minkowski n={n} phi={list(phi)} psi={list(psi)}")


# -- right modules and split null extensions ----------------------------------------

class RightModuleAction:
    """Action of the right spirations R_{e_i, e_j} of ``base`` on K^m.

    ``action[i][j]`` is the m x m matrix of R_{e_i,e_j}; for general vectors
    R_{a,b} = sum_ij a_i b_j R_{e_i,e_j}.
    """

    def __init__(self, base: TernaryAlgebra, m: int, action, label: str = ""):
        self.base = base
        self.ring = base.ring
        self.m = m
        n = base.rank
        R = self.ring
        self.action = tuple(tuple(tuple(tuple(R(c) for c in row) for row in action[i][j])
                                  for j in range(n)) for i in range(n))
        for i, j in product(range(n), repeat=2):
            M = self.action[i][j]
            if len(M) != m or any(len(r) != m for r in M):
                raise RankMismatch(f"action matrices must be {m} x {m}")
        self.label = label

    @classmethod
    def adjoint(cls, base: TernaryAlgebra) -> "RightModuleAction":
        """W = V with R_{a,b} w = <w b a>."""
        E = base.space.basis()
        n = base.rank
        act = [[inner_operator(base, "R", E[i], E[j]) for j in range(n)] for i in range(n)]
        return cls(base, n, act, "adjoint")

    @classmethod
    def from_function(cls, base: TernaryAlgebra, m: int, fn, label: str = "") -> "RightModuleAction":
        """Action given by fn(a, b, w) = R_{a,b} w on basis vectors."""
        E = base.space.basis()
        W = [tuple(base.ring.one if r == c else base.ring.zero for r in range(m))
             for c in range(m)]
        n = base.rank
        act = [[tuple(zip(*[fn(E[i], E[j], w) for w in W])) for j in range(n)] for i in range(n)]
        return cls(base, m, act, label)

    @classmethod
    def zero(cls, base: TernaryAlgebra) -> "RightModuleAction":
        n = base.rank
        return cls(base, 0, [[() for _ in range(n)] for _ in range(n)], "zero")

    @classmethod
    def character(cls, base: TernaryAlgebra, phi, psi) -> "RightModuleAction":
        """One-dimensional action R_{a,b} = phi(a) psi(b)."""
        R, n = base.ring, base.rank
        act = [[((R(phi[i] * psi[j]),),) for j in range(n)] for i in range(n)]
        return cls(base, 1, act, f"character phi={list(phi)} psi={list(psi)}")

    def direct_sum(self, other: "RightModuleAction") -> "RightModuleAction":
        if other.base is not self.base and not other.base.same_product(self.base):
            raise RankMismatch("modules over different bases")
        R, n, m1, m2 = self.ring, self.base.rank, self.m, other.m
        act = []
        for i in range(n):
            row = []
            for j in range(n):
                A, B = self.action[i][j], other.action[i][j]
                M = [list(A[r]) + [R.zero] * m2 for r in range(m1)]
                M += [[R.zero] * m1 + list(B[r]) for r in range(m2)]
                row.append(M)
            act.append(row)
        return RightModuleAction(self.base, m1 + m2, act, f"{self.label}+{other.label}")

    def operator(self, a, b) -> tuple:
        R, n, m = self.ring, self.base.rank, self.m
        a, b = self.base.space.vector(a), self.base.space.vector(b)
        out = [[0] * m for _ in range(m)]
        for i, j in product(range(n), repeat=2):
            s = a[i] * b[j]
            if s == 0:
                continue
            M = self.action[i][j]
            for r in range(m):
                for c in range(m):
                    out[r][c] += s * M[r][c]
        return tuple(tuple(R(c) for c in r) for r in out)

    def apply(self, a, b, w) -> tuple:
        if self.m == 0:
            return ()
        return mat_vec(self.ring, self.operator(a, b), w)

    def validate(self) -> list:
        """Failed basis instances of the module axioms (empty when all hold).

        Checked: R_{x,x} = q(x) id via R_ii = q(e_i) and R_ij + R_ji = b_q(e_i,e_j),
        and the composition rule R_{<x3 x4 x5>, x2} = R_{x5,x4} R_{x3,x2}.
        """
        R, n, m = self.ring, self.base.rank, self.m
        sp = self.base.space
        E = sp.basis()
        bad = []
        I = [[R.one if r == c else R.zero for c in range(m)] for r in range(m)]

        def scal(s):
            return tuple(tuple(R(s * c) for c in r) for r in I)

        for i in range(n):
            for j in range(i, n):
                A = self.action[i][j]
                if i == j:
                    if A != scal(sp.q(E[i])):
                        bad.append(("kirmse", (i, i)))
                else:
                    B = self.action[j][i]
                    S = tuple(tuple(R(a + b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))
                    if S != scal(sp.polarize(E[i], E[j])):
                        bad.append(("kirmse", (i, j)))
        for c, d, e, b in product(range(n), repeat=4):
            lhs = self.operator(self.base.triple(E[c], E[d], E[e]), E[b])
            rhs = mat_mul(R, self.action[e][d], self.action[c][b])
            if lhs != rhs:
                bad.append(("composition", (c, d, e, b)))
        return bad


def split_null_extension(base: TernaryAlgebra, action: RightModuleAction) -> TernaryAlgebra:
    """V0 + W with <x y z> = (<x0 y0 z0>, R_{y0,z0} x1 - R_{x0,z0} y1 + R_{x0,y0} z1)
    and form q(x0) (zero on W)."""
    R, n, m = base.ring, base.rank, action.m
    zero = QuadraticSpace(R, [[0] * m for _ in range(m)]) if m else None
    space = base.space.direct_sum(zero) if m else base.space

    def f(x, y, z):
        (x0, x1), (y0, y1), (z0, z1) = _split(x, n), _split(y, n), _split(z, n)
        head = base.triple(x0, y0, z0)
        if not m:
            return head
        tail = vcomb(R, (1, action.apply(y0, z0, x1)), (-1, action.apply(x0, z0, y1)),
                     (1, action.apply(x0, y0, z1)))
        return head + tail

    return TernaryAlgebra.from_function(space, f, f"split null of {base.label} by {action.label}")


# -- polarized spaces ------------------------------------------------------------

def _pairing(b, R):
    rows = [tuple(R(c) for c in r) for r in b]
    n1 = len(rows)
    n2 = len(rows[0]) if rows else 0
    if n1 < 1 or n2 < 1 or any(len(r) != n2 for r in rows):
        raise RankMismatch("b must be a non-empty n1 x n2 table")
    return rows, n1, n2


def polarized_space(b, ring="int") -> TernaryAlgebra:
    """Ternary product on V1 + V2 determined by a pairing b: V1 x V2 -> K.

    With x = (x1, x2) etc. the product is
    ( b(z1,y2) x1 - b(z1,x2) y1 + b(y1,x2) z1 , b(y1,z2) x2 - b(x1,z2) y2 + b(x1,y2) z2 )
    and q(x) = b(x1, x2).
    """
    R = as_ring(ring)
    rows, n1, n2 = _pairing(b, R)
    n = n1 + n2
    coef = [[R.zero] * n for _ in range(n)]
    for i in range(n1):
        for j in range(n2):
            coef[i][n1 + j] = rows[i][j]
    space = QuadraticSpace(R, coef)

    def bb(u, v):
        return R(sum(rows[i][j] * u[i] * v[j] for i in range(n1) for j in range(n2)))

    def f(x, y, z):
        (x1, x2), (y1, y2), (z1, z2) = _split(x, n1), _split(y, n1), _split(z, n1)
        first = vcomb(R, (bb(z1, y2), x1), (-bb(z1, x2), y1), (bb(y1, x2), z1))
        second = vcomb(R, (bb(y1, z2), x2), (-bb(x1, z2), y2), (bb(x1, y2), z2))
        return first + second

    return TernaryAlgebra.from_function(space, f, f"polarized {n1}+{n2}")


def check_BA(b, ring="int") -> VerificationReport:
    """Alternating sum over S3 of b(y1,z_s1) b(y2,z_s2) z_s3 on basis tuples,
    in both directions (y in V1, z in V2 and the reverse)."""
    R = as_ring(ring)
    rows, n1, n2 = _pairing(b, R)
    perms = [(p, _sign(p)) for p in permutations(range(3))]
    checked = 0
    for side in (1, 2):
        ny, nz = (n1, n2) if side == 1 else (n2, n1)
        pair = ((lambda i, j: rows[i][j]) if side == 1 else (lambda i, j: rows[j][i]))
        for ys in product(range(ny), repeat=2):
            for zs in product(range(nz), repeat=3):
                checked += 1
                acc = [0] * nz
                for p, s in perms:
                    c = s * pair(ys[0], zs[p[0]]) * pair(ys[1], zs[p[1]])
                    acc[zs[p[2]]] += c
                if any(R(c) != 0 for c in acc):
                    names = ("V1", "V1", "V2", "V2", "V2") if side == 1 else \
                        ("V2", "V2", "V1", "V1", "V1")
                    w = tuple(f"{nm}:e{k + 1}" for nm, k in zip(names, ys + zs))
                    return VerificationReport("BA", "fails", "exhaustive-basis", w,
                                              ("y1", "y2", "z1", "z2", "z3"), checked,
                                              f"sum = {tuple(R(c) for c in acc)}")
    return VerificationReport("BA", "holds", "exhaustive-basis", None,
                              ("y1", "y2", "z1", "z2", "z3"), checked)


def _sign(p) -> int:
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def matrix_model_22(ring="int") -> TernaryAlgebra:
    """M(2,2) with <XYZ> = X Y^# Z and q = det, in the coordinates
    X = x1 E11 + x2 E21 + y1 E12 + y2 E22, vector (x1, x2, y1, y2)."""
    R = as_ring(ring)

    def to_m(v):
        x1, x2, y1, y2 = v
        return ((x1, y1), (x2, y2))

    def adj(M):
        return ((M[1][1], -M[0][1]), (-M[1][0], M[0][0]))

    def f(x, y, z):
        P = mat_mul(R, mat_mul(R, to_m(x), adj(to_m(y))), to_m(z))
        return (P[0][0], P[1][0], P[0][1], P[1][1])

    space = QuadraticSpace(R, [[0, 0, 0, 1], [0, 0, -1, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    return TernaryAlgebra.from_function(space, f, "M(2,2) with X Y^# Z")


# -- Clifford quaternions over a binary form -----------------------------------------

def clifford_quaternion_algebra(form, ring=None) -> BinaryAlgebra:
    """Unital algebra on (f, v), f = a I + c R12 in the left spiration algebra,
    v in K^2: (f, v)(g, w) = (f g + R_{v,w}, f w + g^# v), coordinates (a, c, v1, v2)."""
    sp = form_space(form, ring)
    R = sp.ring
    al, be, ga = sp.binary_coefficients
    if generators_dependent(sp):
        raise DependentGenerators("I and R_12 are linearly dependent over " + str(R))
    X = basis_R(sp, 1, 2)

    def op(f):
        a, c = f
        return ((R(a + c * X[0][0]), R(c * X[0][1])), (R(c * X[1][0]), R(a + c * X[1][1])))

    def mul(x, y):
        a, c, v1, v2 = x
        a2, c2, w1, w2 = y
        f = (a * a2 - c * c2 * al * ga, a * c2 + c * a2 + c * c2 * be)
        rv = (al * v1 * w1 + be * v2 * w1 + ga * v2 * w2, v1 * w2 - v2 * w1)
        fw = mat_vec(R, op((a, c)), (w1, w2))
        gsv = mat_vec(R, op((a2 + c2 * be, -c2)), (v1, v2))
        return tuple(R(t) for t in (f[0] + rv[0], f[1] + rv[1], fw[0] + gsv[0], fw[1] + gsv[1]))

    def conj(x):
        a, c, v1, v2 = x
        return (R(a + c * be), R(-c), R(-v1), R(-v2))

    # N(f, v) = det f - q(v)
    norm = QuadraticSpace(R, [[1, be, 0, 0], [0, al * ga, 0, 0],
                              [0, 0, -al, -be], [0, 0, 0, -ga]])
    return BinaryAlgebra.from_function(R, 4, mul, (1, 0, 0, 0), conj, norm,
                                       f"H_q for ({al},{be},{ga})")


def clifford_quaternion(form, ring=None) -> TernaryAlgebra:
    """Ternary product x(y^# z) of the Clifford quaternions, on the norm form."""
    A = clifford_quaternion_algebra(form, ring)
    return A.to_ternary("left", label=A.label)


# -- doubling ------------------------------------------------------------------------

def kd_double(alg: BinaryAlgebra, mu, side=None) -> BinaryAlgebra:
    """Doubled algebra on A + A with involution (x0^#, -x1) and norm N(x0) - mu N(x1).

    left :  (x0 z0 + mu z1^# x1, z1 x0 + x1 z0^#)
    right:  (x0 z0 + mu z1 x1^#, z0 x1 + x0^# z1)
    """
    p = _params(mu, side)
    R, n = alg.ring, alg.rank
    mu = R(p.mu)

    def m(a, b):
        return alg.mul(a, b)

    def c(a):
        return alg.conj(a)

    def add(*vs):
        return vcomb(R, *[(1, v) for v in vs])

    def sc(s, v):
        return tuple(R(s * t) for t in v)

    def mul(x, z):
        (x0, x1), (z0, z1) = _split(x, n), _split(z, n)
        if p.side == "left":
            return add(m(x0, z0), sc(mu, m(c(z1), x1))) + add(m(z1, x0), m(x1, c(z0)))
        return add(m(x0, z0), sc(mu, m(z1, c(x1)))) + add(m(z0, x1), m(c(x0), z1))

    def conj(x):
        x0, x1 = _split(x, n)
        return c(x0) + sc(-1, x1)

    unit = tuple(alg.unit) + (R.zero,) * n
    norm = alg.norm.direct_sum(alg.norm, scale=-mu)
    return BinaryAlgebra.from_function(R, 2 * n, mul, unit, conj, norm,
                                       f"KD-{p.side}({alg.label}, mu={mu})")


def abcd_double(alg: TernaryAlgebra, mu, side=None) -> TernaryAlgebra:
    """Base-point-free ternary doubling on V + V with form q(x0) - mu q(x1).

    left  = x (y^# z) in the left doubled algebra, right = (x y^#) z in the
    right one, both written through the ternary product t of ``alg``.
    """
    p = _params(mu, side)
    R, n = alg.ring, alg.rank
    mu = R(p.mu)
    t = alg.triple

    def comb(*pairs):
        return vcomb(R, *pairs)

    def f(x, y, z):
        (x0, x1), (y0, y1), (z0, z1) = _split(x, n), _split(y, n), _split(z, n)
        if p.side == "left":
            first = comb((1, t(x0, y0, z0)), (-mu, t(x0, z1, y1)), (mu, t(y0, z1, x1)),
                         (-mu, t(z0, y1, x1)))
            second = comb((1, t(x1, z0, y0)), (-1, t(y1, z0, x0)), (1, t(z1, y0, x0)),
                          (-mu, t(x1, y1, z1)))
        else:
            first = comb((1, t(x0, y0, z0)), (-mu, t(y1, x1, z0)), (mu, t(z1, x1, y0)),
                         (-mu, t(z1, y1, x0)))
            second = comb((1, t(z0, y0, x1)), (-1, t(z0, x0, y1)), (1, t(y0, x0, z1)),
                          (-mu, t(x1, y1, z1)))
        return first + second

    space = alg.space.direct_sum(alg.space, scale=-mu)
    return TernaryAlgebra.from_function(space, f, f"ABCD-{p.side}({alg.label}, mu={mu})")


def matrix_kd_model(alg: BinaryAlgebra, mu) -> BinaryAlgebra:
    """Pairs (a, b) with (a, b)(a', b') = (a a' + mu b^# b', b a' + a^# b').

    For a commutative base this is the left doubled algebra transported by
    (a, b) -> (a, b^#).
    """
    R, n = alg.ring, alg.rank
    mu = R(mu)
    m, c = alg.mul, alg.conj

    def mul(x, z):
        (a, b), (a2, b2) = _split(x, n), _split(z, n)
        return (vcomb(R, (1, m(a, a2)), (mu, m(c(b), b2)))
                + vcomb(R, (1, m(b, a2)), (1, m(c(a), b2))))

    def conj(x):
        a, b = _split(x, n)
        return c(a) + tuple(R(-t) for t in b)

    unit = tuple(alg.unit) + (R.zero,) * n
    norm = alg.norm.direct_sum(alg.norm, scale=-mu)
    return BinaryAlgebra.from_function(R, 2 * n, mul, unit, conj, norm,
                                       f"matrix model({alg.label}, mu={mu})")


def binarion(form, ring=None, e=(1, 0)) -> BinaryAlgebra:
    """Homotope of the canonical rank-2 product at e."""
    from .binary2d import canonical_algebra
    from .spherical import homotope
    return homotope(canonical_algebra(form, ring), e)


def exterior_plane(ring="int") -> TernaryAlgebra:
    """Split null extension of the dual numbers (form x1^2) by their adjoint module."""
    from .binary2d import canonical_algebra
    base = canonical_algebra((1, 0, 0), ring)
    return split_null_extension(base, RightModuleAction.adjoint(base))
