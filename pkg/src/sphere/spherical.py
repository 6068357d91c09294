"""Ternary algebras on quadratic spaces, their homotopes and the torsor law.

A ``TernaryAlgebra`` stores the structure constants ``C[i, j, k, l]``, the
l-th coordinate of <e_i e_j e_k>, next to the quadratic space it lives on.
A ``BinaryAlgebra`` is a unital algebra with involution and a recorded norm;
it is what ``homotope`` returns and what Cayley-Dickson doubling consumes.
"""
from __future__ import annotations

import json

import numpy as np

from .errors import NotInvertible, RankMismatch
from .linalg import vcomb
from .quadratic import QuadraticSpace, _scalar_json, _scalar_read, sphere_vectors
from .ring import RingSpec

# int64 fast path for integer arithmetic is taken only below this bound
_SAFE = 1 << 58


def _amax(arr) -> int:
    if arr.size == 0:
        return 0
    return int(np.max(np.abs(arr)))


def _to_int64(arr):
    return arr if arr.dtype == np.int64 else arr.astype(np.int64)


def _to_object(arr):
    return arr if arr.dtype == object else arr.astype(object)


def _ring_op(R: RingSpec, bound: int, fn, *arrays):
    """Apply ``fn`` to arrays; integers go through int64 when provably safe."""
    if R.kind == "int":
        if bound < _SAFE:
            return fn(*[_to_int64(a) for a in arrays])
        return fn(*[_to_object(a) for a in arrays])
    return R.reduce(fn(*arrays))


def prep(R: RingSpec, X) -> np.ndarray:
    """Bring vectors (tuple, list of tuples or array) into a 2-d ring array."""
    if isinstance(X, np.ndarray) and X.dtype != object and X.ndim == 2:
        return X.astype(R.dtype) if R.dtype is not object else X.astype(object)
    arr = R.array(X)
    if arr.ndim == 1:
        arr = arr[None, :]
    return arr


class TernaryAlgebra:
    def __init__(self, space: QuadraticSpace, C, label: str = ""):
        self.space = space
        self.ring = space.ring
        n = space.rank
        arr = C if isinstance(C, np.ndarray) else self.ring.array(C)
        if arr.shape != (n, n, n, n):
            raise RankMismatch(f"structure constants must have shape {(n,) * 4}")
        if self.ring.dtype is object:
            arr = self.ring.array(arr)
        else:
            arr = self.ring.reduce(arr.astype(self.ring.dtype))
        self.C = arr
        self._Cflat = arr.reshape(n, n ** 3)
        self._cmax = _amax(arr) if self.ring.kind == "int" else 0
        self.label = label

    @classmethod
    def from_function(cls, space: QuadraticSpace, f, label: str = "") -> "TernaryAlgebra":
        """Structure constants from a trilinear function on basis vectors."""
        n = space.rank
        E = space.basis()
        C = [[[list(f(E[i], E[j], E[k])) for k in range(n)] for j in range(n)]
             for i in range(n)]
        return cls(space, C, label)

    @property
    def rank(self) -> int:
        return self.space.rank

    def __repr__(self):
        return f"TernaryAlgebra({self.label or 'unnamed'}, {self.ring}, rank {self.rank})"

    def __eq__(self, other):
        return (isinstance(other, TernaryAlgebra) and self.space == other.space
                and np.array_equal(self.C, other.C))

    def same_product(self, other: "TernaryAlgebra") -> bool:
        return self.ring == other.ring and np.array_equal(self.C, other.C)

    def q(self, x):
        return self.space.q(x)

    def constant(self, i, j, k) -> tuple:
        return self.ring.to_tuple(self.C[i, j, k])

    def triple(self, x, y, z) -> tuple:
        X, Y, Z = (prep(self.ring, self.space.vector(v)) for v in (x, y, z))
        return self.ring.to_tuple(self.triple_many(X, Y, Z)[0])

    def triple_many(self, X, Y, Z) -> np.ndarray:
        R, n = self.ring, self.rank
        N = X.shape[0]
        bound = self._cmax * _amax(X) * _amax(Y) * _amax(Z) * n ** 3 if R.kind == "int" else 0

        def go(C, X, Y, Z):
            A = (X @ C).reshape(N, n, n * n)
            B = np.einsum("nj,njm->nm", Y, A).reshape(N, n, n)
            return np.einsum("nk,nkl->nl", Z, B)

        return _ring_op(R, bound, go, self._Cflat, X, Y, Z)

    def reversed(self) -> "TernaryAlgebra":
        """The opposite product <xyz>' = <zyx>."""
        return TernaryAlgebra(self.space, np.transpose(self.C, (2, 1, 0, 3)).copy(),
                              (self.label + " reversed").strip())

    def structure_table(self) -> list:
        return self.ring.to_nested(self.C)

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        d = self.space.to_dict()
        R = self.ring
        d["c"] = [[[[str(R(v)) for v in self.C[i, j, k]] for k in range(self.rank)]
                   for j in range(self.rank)] for i in range(self.rank)]
        if self.label:
            d["label"] = self.label
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "TernaryAlgebra":
        space = QuadraticSpace.from_dict(d)
        R = space.ring
        C = [[[[_scalar_read(R, v) for v in vk] for vk in vj] for vj in vi] for vi in d["c"]]
        return cls(space, C, d.get("label", ""))

    @classmethod
    def from_json(cls, text: str) -> "TernaryAlgebra":
        return cls.from_dict(json.loads(text))


class BinaryAlgebra:
    """Unital algebra with involution x -> J x and norm form ``norm``."""

    def __init__(self, ring: RingSpec, M, unit, J, norm: QuadraticSpace, label: str = ""):
        self.ring = ring
        M = M if isinstance(M, np.ndarray) else ring.array(M)
        n = M.shape[0]
        if M.shape != (n, n, n):
            raise RankMismatch("binary structure constants must be n x n x n")
        self.M = ring.array(M) if ring.dtype is object else ring.reduce(M.astype(ring.dtype))
        self.rank = n
        self._Mflat = self.M.reshape(n, n * n)
        self._mmax = _amax(self.M) if ring.kind == "int" else 0
        self.unit = tuple(ring(c) for c in unit)
        self.J = J if isinstance(J, np.ndarray) else ring.array(J)
        if ring.dtype is not object:
            self.J = self.J.astype(ring.dtype)
        self.norm = norm
        self.label = label

    @classmethod
    def from_function(cls, ring, n, mul, unit, conj, norm, label=""):
        E = [tuple(ring.one if j == i else ring.zero for j in range(n)) for i in range(n)]
        M = [[list(mul(E[i], E[j])) for j in range(n)] for i in range(n)]
        J = [[conj(E[j])[i] for j in range(n)] for i in range(n)]
        return cls(ring, M, unit, J, norm, label)

    def __repr__(self):
        return f"BinaryAlgebra({self.label or 'unnamed'}, {self.ring}, rank {self.rank})"

    def vector(self, x):
        return self.norm.vector(x)

    def basis(self):
        return self.norm.basis()

    def mul_many(self, X, Y):
        R, n = self.ring, self.rank
        N = X.shape[0]
        bound = self._mmax * _amax(X) * _amax(Y) * n * n if R.kind == "int" else 0

        def go(M, X, Y):
            A = (X @ M).reshape(N, n, n)
            return np.einsum("nj,njl->nl", Y, A)

        return _ring_op(R, bound, go, self._Mflat, X, Y)

    def conj_many(self, X):
        R = self.ring
        bound = _amax(self.J) * _amax(X) * self.rank if R.kind == "int" else 0
        return _ring_op(R, bound, lambda J, X: X @ J.T, self.J, X)

    def mul(self, x, y) -> tuple:
        X, Y = prep(self.ring, self.vector(x)), prep(self.ring, self.vector(y))
        return self.ring.to_tuple(self.mul_many(X, Y)[0])

    def conj(self, x) -> tuple:
        return self.ring.to_tuple(self.conj_many(prep(self.ring, self.vector(x)))[0])

    def N(self, x):
        return self.norm.q(x)

    def trace(self, x):
        """t(x) with x + x^# = t(x) 1, read off a unit coordinate of 1."""
        R = self.ring
        s = tuple(R(a + b) for a, b in zip(self.vector(x), self.conj(x)))
        for k, u in enumerate(self.unit):
            if R.is_invertible(u):
                return R(s[k] * R.invert(u))
        raise NotInvertible("the unit has no invertible coordinate")

    def left_matrix(self, a):
        """Matrix of z -> a z."""
        cols = [self.mul(a, e) for e in self.basis()]
        return tuple(zip(*cols))

    def right_matrix(self, a):
        cols = [self.mul(e, a) for e in self.basis()]
        return tuple(zip(*cols))

    def same_product(self, other: "BinaryAlgebra") -> bool:
        return (self.ring == other.ring and np.array_equal(self.M, other.M)
                and self.unit == other.unit and np.array_equal(self.J, other.J))

    def to_ternary(self, side: str, scale=1, label: str | None = None) -> TernaryAlgebra:
        """<xyz> = scale * x(y^# z) (side left) or scale * (x y^#) z (side right),
        on the form scale * N."""
        R = self.ring
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        n = self.rank
        E = np.array(self.basis(), dtype=object)
        idx = np.indices((n, n, n)).reshape(3, -1)
        X, Y, Z = (prep(R, E[i]) for i in idx)
        Ys = self.conj_many(Y)
        if side == "left":
            T = self.mul_many(X, self.mul_many(Ys, Z))
        else:
            T = self.mul_many(self.mul_many(X, Ys), Z)
        C = R.reduce(_to_object(T) * R(scale)).reshape(n, n, n, n)
        return TernaryAlgebra(self.norm.scaled(scale), C,
                              label if label is not None else f"{self.label} {side} triple")


# -- operations -------------------------------------------------------------

def triple(alg: TernaryAlgebra, x, y, z) -> tuple:
    return alg.triple(x, y, z)


def inner_operator(alg: TernaryAlgebra, kind: str, a, b) -> tuple:
    """Matrix of L_{a,b} z = <abz>, R_{a,b} x = <xba> or S_{a,b} y = <ayb>."""
    E = alg.space.basis()
    if kind == "L":
        cols = [alg.triple(a, b, e) for e in E]
    elif kind == "R":
        cols = [alg.triple(e, b, a) for e in E]
    elif kind == "S":
        cols = [alg.triple(a, e, b) for e in E]
    else:
        raise ValueError(f"unknown operator kind {kind!r}")
    return tuple(zip(*cols))


def homotope(alg: TernaryAlgebra, e) -> BinaryAlgebra:
    """Binary algebra x.z = <xez>/q(e) with unit e, x^# = b_q(x,e)/q(e) e - x."""
    R, space = alg.ring, alg.space
    e = space.vector(e)
    qe = space.q(e)
    inv = R.invert(qe)
    n = alg.rank
    E = space.basis()
    M = [[[R(inv * c) for c in alg.triple(E[i], e, E[j])] for j in range(n)] for i in range(n)]

    def conj(x):
        return vcomb(R, (space.polarize(x, e) * inv, e), (-1, x))

    J = [[conj(E[j])[i] for j in range(n)] for i in range(n)]
    return BinaryAlgebra(R, M, e, J, space.scaled(inv), f"homotope of {alg.label} at {e}")


def torsor_product(alg: TernaryAlgebra, x, y, z) -> tuple:
    R = alg.ring
    inv = R.invert(alg.q(y))
    return tuple(R(inv * c) for c in alg.triple(x, y, z))


def sphere_enumerate(alg, c, box: int | None = None) -> list[tuple]:
    space = alg.space if isinstance(alg, TernaryAlgebra) else alg
    return sphere_vectors(space, c, box)
