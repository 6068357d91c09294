"""Exact arithmetic over the integers, the residue rings Z/n and the rationals.

Ring elements are plain Python values: ``int`` for the integers and for
residues (always kept in ``[0, n)``), ``fractions.Fraction`` for rationals.
Vectors are tuples of such values.  Bulk work goes through numpy arrays; for
small moduli those are int64, otherwise object arrays holding Python numbers
so that nothing ever overflows.
"""
from __future__ import annotations

import ast
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .errors import NotInvertible, UnsupportedRing

# int64 is safe for residues below this bound: products of a few reduced
# values summed over a rank-16 tensor stay far below 2**63.
_INT64_MODULUS_LIMIT = 1 << 12


@dataclass(frozen=True)
class RingSpec:
    kind: str  # "int", "zmod" or "rat"
    modulus: int | None = None

    def __post_init__(self):
        if self.kind not in ("int", "zmod", "rat"):
            raise UnsupportedRing(f"unknown ring kind {self.kind!r}")
        if self.kind == "zmod":
            if self.modulus is None or int(self.modulus) < 2:
                raise UnsupportedRing("zmod needs a modulus n >= 2")
        elif self.modulus is not None:
            raise UnsupportedRing(f"{self.kind} takes no modulus")

    # -- descriptors ---------------------------------------------------
    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        t = text.strip().lower()
        if t in ("int", "z"):
            return INTEGERS
        if t in ("rat", "q"):
            return RATIONALS
        if t.startswith("zmod:"):
            try:
                n = int(t[5:])
            except ValueError:
                raise UnsupportedRing(f"bad modulus in {text!r}") from None
            return zmod(n)
        raise UnsupportedRing(f"unknown ring descriptor {text!r}")

    def __str__(self):
        if self.kind == "zmod":
            return f"zmod:{self.modulus}"
        return self.kind

    @property
    def is_finite(self) -> bool:
        return self.kind == "zmod"

    @property
    def size(self) -> int | None:
        return self.modulus if self.kind == "zmod" else None

    # -- scalars --------------------------------------------------------
    def __call__(self, x):
        """Canonical representative of ``x``."""
        if isinstance(x, str):
            return self.parse_element(x)
        if self.kind == "rat":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator == 1:
                x = x.numerator
            elif self.kind == "zmod":
                return self.mul(x.numerator, self.invert(x.denominator))
            else:
                raise ValueError(f"{x} is not an integer")
        if isinstance(x, (np.integer,)):
            x = int(x)
        if not isinstance(x, int):
            raise TypeError(f"cannot read {x!r} as a ring element")
        if self.kind == "zmod":
            return x % self.modulus
        return x

    def parse_element(self, text: str):
        return ring_eval(self, text)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def add(self, a, b):
        return self(a + b)

    def sub(self, a, b):
        return self(a - b)

    def neg(self, a):
        return self(-a)

    def mul(self, a, b):
        return self(a * b)

    def is_zero(self, a) -> bool:
        return self(a) == 0

    def is_invertible(self, a) -> bool:
        a = self(a)
        if self.kind == "int":
            return a in (1, -1)
        if self.kind == "rat":
            return a != 0
        return math.gcd(a, self.modulus) == 1

    def invert(self, a):
        a = self(a)
        if not self.is_invertible(a):
            raise NotInvertible(f"{a} is not invertible in {self}")
        if self.kind == "int":
            return a
        if self.kind == "rat":
            return 1 / a
        return pow(a, -1, self.modulus)

    def divides(self, a, b) -> bool:
        """True when b = a*t for some ring element t."""
        a, b = self(a), self(b)
        if self.kind == "int":
            return b == 0 if a == 0 else b % a == 0
        if self.kind == "rat":
            return a != 0 or b == 0
        return b % math.gcd(a, self.modulus) == 0

    def elements(self) -> list:
        if not self.is_finite:
            raise UnsupportedRing(f"{self} has infinitely many elements")
        return list(range(self.modulus))

    def format(self, a) -> str:
        return str(self(a))

    # -- arrays ---------------------------------------------------------
    @property
    def dtype(self):
        if self.kind == "zmod" and self.modulus <= _INT64_MODULUS_LIMIT:
            return np.int64
        return object

    def array(self, data) -> np.ndarray:
        """numpy array of canonical elements (nested sequences accepted)."""
        arr = np.array(data, dtype=object)
        flat = [self(v) for v in arr.reshape(-1)]
        out = np.empty(len(flat), dtype=object)
        out[:] = flat
        out = out.reshape(arr.shape)
        if self.dtype is not object:
            out = out.astype(self.dtype)
        return out

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        if self.kind == "zmod":
            return arr % self.modulus
        return arr

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(self.zero)
            return out
        return np.zeros(shape, dtype=self.dtype)

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def to_tuple(self, arr) -> tuple:
        return tuple(self(v) for v in np.asarray(arr).reshape(-1))

    def to_nested(self, arr):
        arr = np.asarray(arr)
        if arr.ndim == 0:
            return self(arr.item())
        return [self.to_nested(a) for a in arr]

    def vectors(self, rank: int, box: int | None = None) -> Iterator[tuple]:
        """All vectors of the module (finite ring) or of the box [-B, B]^rank."""
        if self.is_finite and box is None:
            coords = self.elements()
        elif box is not None:
            coords = [self(c) for c in range(-box, box + 1)]
            if self.is_finite:
                coords = sorted(set(coords))
        else:
            raise UnsupportedRing(f"enumerating {self}-vectors needs a box")
        for v in product(coords, repeat=rank):
            yield v

    def vector_array(self, rank: int, box: int | None = None) -> np.ndarray:
        """Same enumeration as ``vectors`` but as an (N, rank) array."""
        if self.is_finite and box is None:
            coords = np.arange(self.modulus)
        elif box is not None:
            vals = [self(c) for c in range(-box, box + 1)]
            if self.is_finite:
                vals = sorted(set(vals))
            coords = np.array(vals, dtype=object)
        else:
            raise UnsupportedRing(f"enumerating {self}-vectors needs a box")
        k = len(coords)
        idx = np.indices((k,) * rank).reshape(rank, -1).T
        out = coords[idx]
        if self.kind == "rat":
            return self.array(out)
        return out.astype(self.dtype)

    def random_vectors(self, rng: np.random.Generator, count: int, rank: int,
                       bound: int = 10) -> np.ndarray:
        """Random sample; uniform for Z/n, bounded numerators otherwise."""
        if self.is_finite:
            raw = rng.integers(0, self.modulus, size=(count, rank))
            return raw.astype(self.dtype) if self.dtype is not object else raw.astype(object)
        nums = rng.integers(-bound, bound + 1, size=(count, rank))
        if self.kind == "int":
            out = np.empty((count, rank), dtype=object)
            out[:] = [[int(v) for v in row] for row in nums]
            return out
        dens = rng.integers(1, bound + 1, size=(count, rank))
        out = np.empty((count, rank), dtype=object)
        out[:] = [[Fraction(int(a), int(b)) for a, b in zip(r1, r2)]
                  for r1, r2 in zip(nums, dens)]
        return out


INTEGERS = RingSpec("int")
RATIONALS = RingSpec("rat")


def zmod(n: int) -> RingSpec:
    return RingSpec("zmod", int(n))


def as_ring(r) -> RingSpec:
    if isinstance(r, RingSpec):
        return r
    return RingSpec.parse(str(r))


def ring_eval(spec: RingSpec, expr: str):
    """Evaluate an expression built from integer constants, + - * and
    division by invertible elements, with the result in canonical form."""
    try:
        tree = ast.parse(expr.strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse ring expression {expr!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) \
                and not isinstance(node.value, bool):
            return spec(node.value)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return spec.neg(v) if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return spec.add(a, b)
            if isinstance(node.op, ast.Sub):
                return spec.sub(a, b)
            if isinstance(node.op, ast.Mult):
                return spec.mul(a, b)
            if isinstance(node.op, ast.Div):
                return spec.mul(a, spec.invert(b))
            if isinstance(node.op, ast.Pow) and isinstance(node.right, ast.Constant):
                e = node.right.value
                if isinstance(e, int) and e >= 0:
                    out = spec.one
                    for _ in range(e):
                        out = spec.mul(out, a)
                    return out
        raise ValueError(f"unsupported construct in ring expression {expr!r}")

    return ev(tree)
