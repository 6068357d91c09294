"""Quadratic spaces: forms, polarization, Jordan maps, reflections, roots."""
from __future__ import annotations

import json
from typing import Iterable

import numpy as np

from .errors import NotInvertible, RankMismatch, UnsupportedRing
from .linalg import vadd, vcomb, vec
from .ring import RingSpec, as_ring

REFLECTION_MODES = ("s", "j", "sigma")


class QuadraticSpace:
    """Free module K^n with q(x) = sum_ij b[i][j] x_i x_j.

    ``b`` need not be symmetric; only q matters and the polarization is
    always recomputed from q.
    """

    def __init__(self, ring, b):
        self.ring = as_ring(ring)
        rows = [list(r) for r in b]
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise RankMismatch("b must be a square table of rank >= 1")
        self.rank = n
        self.b = tuple(tuple(self.ring(c) for c in r) for r in rows)
        self.B = self.ring.array(self.b)
        self.G = self.ring.reduce(self.B + self.B.T)  # matrix of b_q

    @classmethod
    def binary(cls, ring, alpha, beta, gamma):
        """q = alpha x1^2 + beta x1 x2 + gamma x2^2 (upper triangular storage)."""
        return cls(ring, [[alpha, beta], [0, gamma]])

    @classmethod
    def diagonal(cls, ring, coeffs):
        n = len(coeffs)
        return cls(ring, [[coeffs[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return (isinstance(other, QuadraticSpace) and self.ring == other.ring
                and self.b == other.b)

    def __hash__(self):
        return hash((self.ring, self.b))

    def __repr__(self):
        return f"QuadraticSpace({self.ring}, b={[list(r) for r in self.b]})"

    @property
    def binary_coefficients(self):
        """(alpha, beta, gamma) of a rank-2 form."""
        if self.rank != 2:
            raise RankMismatch("binary coefficients need rank 2")
        R, b = self.ring, self.b
        return b[0][0], R(b[0][1] + b[1][0]), b[1][1]

    def vector(self, x) -> tuple:
        return vec(self.ring, x, self.rank)

    def basis(self) -> list[tuple]:
        R = self.ring
        return [tuple(R.one if j == i else R.zero for j in range(self.rank))
                for i in range(self.rank)]

    # -- evaluation -----------------------------------------------------
    def q(self, x):
        x = self.vector(x)
        return self.ring(sum(self.b[i][j] * x[i] * x[j]
                             for i in range(self.rank) for j in range(self.rank)))

    def polarize(self, x, y):
        R = self.ring
        return R(self.q(vadd(R, self.vector(x), self.vector(y))) - self.q(x) - self.q(y))

    def q_many(self, X: np.ndarray) -> np.ndarray:
        return self.ring.reduce(np.einsum("ni,ij,nj->n", X, self.B, X))

    def polarize_many(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        return self.ring.reduce(np.einsum("ni,ij,nj->n", X, self.G, Y))

    def is_invertible_vector(self, x) -> bool:
        return self.ring.is_invertible(self.q(x))

    # -- derived spaces ---------------------------------------------------
    def scaled(self, lam) -> "QuadraticSpace":
        R = self.ring
        return QuadraticSpace(R, [[R(lam * c) for c in r] for r in self.b])

    def direct_sum(self, other: "QuadraticSpace", scale=1) -> "QuadraticSpace":
        """q(x0, x1) = q0(x0) + scale * q1(x1)."""
        if other.ring != self.ring:
            raise RankMismatch("direct sum needs a common ring")
        R, n, m = self.ring, self.rank, other.rank
        b = [[R.zero] * (n + m) for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                b[i][j] = self.b[i][j]
        for i in range(m):
            for j in range(m):
                b[n + i][n + j] = R(scale * other.b[i][j])
        return QuadraticSpace(R, b)

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        R = self.ring
        return {"ring": str(R), "rank": self.rank,
                "b": [[_scalar_json(R, c) for c in r] for r in self.b]}

    @classmethod
    def from_dict(cls, d: dict) -> "QuadraticSpace":
        R = as_ring(d["ring"])
        b = [[_scalar_read(R, c) for c in r] for r in d["b"]]
        if "rank" in d and int(d["rank"]) != len(b):
            raise RankMismatch("rank field disagrees with b")
        return cls(R, b)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _scalar_json(R, c):
    c = R(c)
    if R.kind == "rat":
        return str(c)
    return int(c)


def _scalar_read(R, c):
    if isinstance(c, str):
        return R.parse_element(c)
    return R(c)


def parse_form(text: str, ring: RingSpec | str | None = None) -> QuadraticSpace:
    """Read a form given as JSON (form file syntax) or as ``a,b,c``."""
    t = text.strip()
    if t.startswith("{"):
        d = json.loads(t)
        if ring is not None and "ring" not in d:
            d["ring"] = str(ring)
        return QuadraticSpace.from_dict(d)
    R = as_ring(ring or "int")
    parts = [R.parse_element(p) for p in t.split(",")]
    if len(parts) != 3:
        raise ValueError("a binary form is given as alpha,beta,gamma")
    return QuadraticSpace.binary(R, *parts)


# -- operations -----------------------------------------------------------

def eval_q(space: QuadraticSpace, x):
    return space.q(x)


def polarize(space: QuadraticSpace, x, y):
    return space.polarize(x, y)


def jordan_Q(space: QuadraticSpace, x, y) -> tuple:
    """Q_x y = b_q(x,y) x - q(x) y."""
    R = space.ring
    x, y = space.vector(x), space.vector(y)
    return vcomb(R, (space.polarize(x, y), x), (-space.q(x), y))


def jordan_D(space: QuadraticSpace, x, z, y) -> tuple:
    """D_{x,z} y = b_q(x,y) z + b_q(y,z) x - b_q(x,z) y."""
    R = space.ring
    x, y, z = space.vector(x), space.vector(y), space.vector(z)
    return vcomb(R, (space.polarize(x, y), z), (space.polarize(y, z), x),
                 (-space.polarize(x, z), y))


def reflection(space: QuadraticSpace, mode: str, x, y) -> tuple:
    """The three product maps on invertible vectors: s_x(y), j_x(y), sigma_x(y)."""
    R = space.ring
    x, y = space.vector(x), space.vector(y)
    if mode == "s":
        qx_inv = R.invert(space.q(x))
        return vcomb(R, (space.polarize(y, x) * qx_inv, x), (-1, y))
    if mode not in ("j", "sigma"):
        raise ValueError(f"unknown reflection mode {mode!r}")
    qx = space.q(x)
    if not R.is_invertible(qx):
        raise NotInvertible(f"q(x) = {qx} is not invertible")
    qy_inv = R.invert(space.q(y))
    if mode == "j":
        return vcomb(R, (qx * qy_inv, y))
    return vcomb(R, (space.polarize(y, x) * qy_inv, x), (-qx * qy_inv, y))


def root_vectors(space: QuadraticSpace, box: int) -> list[tuple]:
    """All root vectors with coordinates in [-box, box], over the integers.

    y is a root vector when q(y) != 0 and q(y) divides b_q(x, y) for all x;
    by bilinearity it is enough to test the basis vectors x = e_i.
    """
    R = space.ring
    if R.kind != "int":
        raise UnsupportedRing("root vectors are only supported over the integers")
    out = []
    for y in R.vectors(space.rank, box):
        qy = space.q(y)
        if qy == 0:
            continue
        if all(space.polarize(e, y) % qy == 0 for e in space.basis()):
            out.append(y)
    return out


def root_coefficient(space: QuadraticSpace, y, x) -> int:
    """n_{y,x} = b_q(x, y) / q(y) for a root vector y."""
    qy = space.q(y)
    bxy = space.polarize(x, y)
    if qy == 0 or bxy % qy:
        raise NotInvertible(f"{y} is not a root vector for {x}")
    return bxy // qy


def sphere_vectors(space: QuadraticSpace, c, box: int | None = None) -> list[tuple]:
    """Vectors with q(x) = c, by exhaustive enumeration (box needed over Z/Q)."""
    from .errors import EmptySphere, InfeasibleStrategy
    R = space.ring
    c = R(c)
    if not R.is_invertible(c):
        raise NotInvertible(f"sphere level {c} is not invertible")
    if not R.is_finite and box is None:
        raise InfeasibleStrategy("sphere enumeration over an infinite ring needs a box")
    if R.kind == "rat":
        raise InfeasibleStrategy("sphere enumeration over the rationals is not supported")
    X = R.vector_array(space.rank, box)
    keep = []
    chunk = 1 << 18
    for s in range(0, len(X), chunk):
        part = X[s:s + chunk]
        qv = space.q_many(part)
        keep.append(part[qv == c])
    hits = np.concatenate(keep) if keep else X[:0]
    return [R.to_tuple(v) for v in hits]
