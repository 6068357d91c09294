"""Identity verification for ternary algebras, binary algebras and forms.

Every identity is written once as a function returning the difference
LHS - RHS for a batch of argument vectors, together with the degree of each
argument.  Three ways of choosing the arguments are offered:

exhaustive-basis
    Arguments of degree 1 run over the basis, arguments of degree 2 over
    the basis together with all sums e_i + e_j (i < j).  Writing the
    difference as a polynomial map, its coefficient vectors are integer
    combinations of the values at these points, so vanishing there means
    vanishing identically.  The argument holds over every commutative ring
    and any failure found is a genuine counterexample.  Degree >= 3 is
    rejected.
exhaustive-module
    Arguments of degree >= 2 run over every vector of the module (finite
    rings) or of a coordinate box; degree-1 arguments still only need the
    basis.
sampled
    Seeded random vectors for every argument.

Witnesses are the first failing tuple in lexicographic scan order.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import InfeasibleStrategy
from .quadratic import QuadraticSpace
from .ring import RingSpec
from .spherical import BinaryAlgebra, TernaryAlgebra, _amax, _ring_op, prep

MAX_TUPLES = 30_000_000


class IdentityId(str, enum.Enum):
    K = "K"
    PA = "PA"
    AT1 = "AT1"
    COM = "COM"
    TS = "TS"
    TC = "TC"
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A1dual = "A1dual"
    A2dual = "A2dual"
    A3dual = "A3dual"
    FUFO = "FUFO"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Strategy:
    kind: str = "exhaustive"  # exhaustive | exhaustive-basis | exhaustive-module | sampled
    count: int = 1000
    seed: int = 0
    box: int | None = None
    bound: int = 10

    @classmethod
    def parse(cls, s) -> "Strategy":
        if s is None:
            return cls()
        if isinstance(s, Strategy):
            return s
        text = str(s).strip()
        if text in ("exhaustive", "exhaustive-basis", "exhaustive-module", "sampled"):
            return cls(text)
        raise InfeasibleStrategy(f"unknown strategy {text!r}")

    def describe(self, resolved: str | None = None) -> str:
        kind = resolved or self.kind
        if kind == "sampled":
            return f"sampled(count={self.count},seed={self.seed})"
        if kind == "exhaustive-module" and self.box is not None:
            return f"exhaustive-module(box={self.box})"
        return kind


@dataclass
class VerificationReport:
    identity: str
    verdict: str  # "holds" | "fails"
    strategy: str
    witness: tuple | None = None
    variables: tuple = ()
    checked: int = 0
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    def __bool__(self):
        return self.holds

    def result_line(self) -> str:
        return f"RESULT {self.identity} {self.verdict} {self.strategy}"

    def lines(self) -> list[str]:
        out = [f"identity {self.identity}: {self.verdict} ({self.checked} tuples, {self.strategy})"]
        if self.witness is not None:
            for name, v in zip(self.variables, self.witness):
                out.append(f"  {name} = {_fmt(v)}")
        if self.detail:
            out.append(f"  {self.detail}")
        out.append(self.result_line())
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _fmt(v):
    if isinstance(v, tuple):
        return "(" + ", ".join(str(c) for c in v) + ")"
    return str(v)


# -- evaluation context -------------------------------------------------------

class Evaluator:
    """Batched operations used by identity definitions.

    All methods take 2-d arrays with one row per argument tuple.
    """

    def __init__(self, ring: RingSpec, rank: int, space: QuadraticSpace | None,
                 ternary: TernaryAlgebra | None = None, binary: BinaryAlgebra | None = None,
                 flip: bool = False):
        self.R = ring
        self.rank = rank
        self.space = space
        self.ternary = ternary
        self.binary = binary
        self.flip = flip

    @classmethod
    def of(cls, obj) -> "Evaluator":
        if isinstance(obj, TernaryAlgebra):
            return cls(obj.ring, obj.rank, obj.space, ternary=obj)
        if isinstance(obj, BinaryAlgebra):
            return cls(obj.ring, obj.rank, obj.norm, binary=obj)
        if isinstance(obj, QuadraticSpace):
            return cls(obj.ring, obj.rank, obj)
        raise TypeError(f"cannot verify identities on {type(obj).__name__}")

    def dual(self) -> "Evaluator":
        return Evaluator(self.R, self.rank, self.space, self.ternary, self.binary, not self.flip)

    # ternary
    def t(self, X, Y, Z):
        if self.flip:
            X, Z = Z, X
        return self.ternary.triple_many(X, Y, Z)

    # binary
    def m(self, X, Y):
        if self.flip:
            X, Y = Y, X
        return self.binary.mul_many(X, Y)

    def conj(self, X):
        return self.binary.conj_many(X)

    def unit(self, N):
        u = prep(self.R, self.binary.unit)
        return np.repeat(u, N, axis=0)

    # scalars
    def q(self, X):
        sp = self.space
        bound = _amax(sp.B) * _amax(X) ** 2 * self.rank ** 2 if self.R.kind == "int" else 0
        return _ring_op(self.R, bound, lambda B, X: np.einsum("ni,ij,nj->n", X, B, X), sp.B, X)

    def bq(self, X, Y):
        sp = self.space
        bound = _amax(sp.G) * _amax(X) * _amax(Y) * self.rank ** 2 if self.R.kind == "int" else 0
        return _ring_op(self.R, bound, lambda G, X, Y: np.einsum("ni,ij,nj->n", X, G, Y),
                        sp.G, X, Y)

    def smul(self, s, X):
        bound = _amax(s) * _amax(X) if self.R.kind == "int" else 0
        return _ring_op(self.R, bound, lambda s, X: s[:, None] * X, s, X)

    def mul(self, a, b):
        bound = _amax(a) * _amax(b) if self.R.kind == "int" else 0
        return _ring_op(self.R, bound, lambda a, b: a * b, a, b)

    def Qop(self, X, Y):
        """Jordan map Q_x y = b_q(x,y) x - q(x) y."""
        return self.smul(self.bq(X, Y), X) - self.smul(self.q(X), Y)


@dataclass(frozen=True)
class Identity:
    name: str
    kind: str  # ternary | binary | quadratic
    variables: tuple  # ((name, degree), ...)
    fn: Callable
    dual: bool = False
    description: str = ""

    @property
    def degrees(self):
        return tuple(d for _, d in self.variables)

    @property
    def names(self):
        return tuple(n for n, _ in self.variables)

    def evaluate(self, E: Evaluator, arrays) -> np.ndarray:
        if self.dual:
            E = E.dual()
        parts = self.fn(E, *arrays)
        if not isinstance(parts, (list, tuple)):
            parts = [parts]
        cols = [p[:, None] if p.ndim == 1 else p for p in parts]
        out = np.concatenate(cols, axis=1) if len(cols) > 1 else cols[0]
        return E.R.reduce(out)


REGISTRY: dict[str, Identity] = {}


def register(name, kind, variables, description=""):
    def deco(fn):
        REGISTRY[name] = Identity(name, kind, tuple(variables), fn, False, description)
        return fn
    return deco


def register_dual(name, base):
    b = REGISTRY[base]
    REGISTRY[name] = Identity(name, b.kind, b.variables, b.fn, True,
                              f"{base} with the order of arguments reversed")


# -- ternary identities ---------------------------------------------------------

@register("K", "ternary", [("x", 2), ("y", 1)], "<xxy> = q(x) y = <yxx>")
def _k(E, x, y):
    qy = E.smul(E.q(x), y)
    return [E.t(x, x, y) - qy, E.t(y, x, x) - qy]


@register("PA", "ternary", [("a", 1), ("b", 1), ("c", 1), ("d", 1), ("e", 1)],
          "<ab<cde>> = <a<dcb>e> = <<abc>de>")
def _pa(E, a, b, c, d, e):
    right = E.t(E.t(a, b, c), d, e)
    return [E.t(a, b, E.t(c, d, e)) - right, E.t(a, E.t(d, c, b), e) - right]


@register("AT1", "ternary", [("a", 1), ("b", 1), ("c", 1), ("d", 1), ("e", 1)],
          "<ab<cde>> = <a<bcd>e> = <<abc>de>")
def _at1(E, a, b, c, d, e):
    right = E.t(E.t(a, b, c), d, e)
    return [E.t(a, b, E.t(c, d, e)) - right, E.t(a, E.t(b, c, d), e) - right]


@register("COM", "ternary", [("x", 1), ("y", 1), ("z", 1)], "<xyz> = <zyx>")
def _com(E, x, y, z):
    return E.t(x, y, z) - E.t(z, y, x)


@register("TS", "ternary", [("x", 1), ("y", 1), ("z", 1)], "<xyz> = <zyx> = <yxz>")
def _ts(E, x, y, z):
    v = E.t(x, y, z)
    return [v - E.t(z, y, x), v - E.t(y, x, z)]


@register("TC", "ternary", [("x", 2), ("y", 2), ("z", 2)], "q(<xyz>) = q(x) q(y) q(z)")
def _tc(E, x, y, z):
    return E.q(E.t(x, y, z)) - E.mul(E.mul(E.q(x), E.q(y)), E.q(z))


@register("A1", "ternary", [("u", 1), ("v", 1), ("x", 1), ("y", 1), ("z", 1)],
          "<uv<xyz>> + <xy<uvz>> = <<uvx>yz> + <x<vuy>z>")
def _a1(E, u, v, x, y, z):
    return (E.t(u, v, E.t(x, y, z)) + E.t(x, y, E.t(u, v, z))
            - E.t(E.t(u, v, x), y, z) - E.t(x, E.t(v, u, y), z))


@register("A2", "ternary", [("u", 1), ("v", 1), ("x", 2), ("y", 1)],
          "<<uvx>yx> = <uv<xyx>>")
def _a2(E, u, v, x, y):
    return E.t(E.t(u, v, x), y, x) - E.t(u, v, E.t(x, y, x))


@register("A3", "ternary", [("x", 2), ("y", 2), ("z", 1)], "<xy<xyz>> = <<xyx>yz>")
def _a3(E, x, y, z):
    return E.t(x, y, E.t(x, y, z)) - E.t(E.t(x, y, x), y, z)


register_dual("A1dual", "A1")
register_dual("A2dual", "A2")
register_dual("A3dual", "A3")


@register("FUFO", "quadratic", [("x", 4), ("y", 2), ("z", 1)], "Q_x Q_y Q_x z = Q_{Q_x y} z")
def _fufo(E, x, y, z):
    return E.Qop(x, E.Qop(y, E.Qop(x, z))) - E.Qop(E.Qop(x, y), z)


# operator calculus of inner operators: R_{a,b} x = <xba>, L_{a,b} z = <abz>,
# S_{a,c} y = <ayc>

@register("R-sum", "ternary", [("a", 1), ("b", 1), ("x", 1)], "R_{a,b} + R_{b,a} = b_q(a,b) id")
def _rsum(E, a, b, x):
    return E.t(x, b, a) + E.t(x, a, b) - E.smul(E.bq(a, b), x)


@register("L-sum", "ternary", [("a", 1), ("b", 1), ("x", 1)], "L_{a,b} + L_{b,a} = b_q(a,b) id")
def _lsum(E, a, b, x):
    return E.t(a, b, x) + E.t(b, a, x) - E.smul(E.bq(a, b), x)


@register("R-square", "ternary", [("a", 2), ("b", 2), ("x", 1)],
          "R_{a,b}^2 = b_q(a,b) R_{a,b} - q(a) q(b) id")
def _rsq(E, a, b, x):
    r = E.t(x, b, a)
    return (E.t(r, b, a) - E.smul(E.bq(a, b), r)
            + E.smul(E.mul(E.q(a), E.q(b)), x))


@register("L-square", "ternary", [("a", 2), ("b", 2), ("x", 1)],
          "L_{a,b}^2 = b_q(a,b) L_{a,b} - q(a) q(b) id")
def _lsq(E, a, b, x):
    r = E.t(a, b, x)
    return (E.t(a, b, r) - E.smul(E.bq(a, b), r)
            + E.smul(E.mul(E.q(a), E.q(b)), x))


@register("R-compose", "ternary", [("a", 1), ("b", 2), ("c", 1), ("x", 1)],
          "R_{a,b} R_{b,c} = q(b) R_{a,c}")
def _rcomp(E, a, b, c, x):
    return E.t(E.t(x, c, b), b, a) - E.smul(E.q(b), E.t(x, c, a))


@register("L-compose", "ternary", [("a", 1), ("b", 2), ("c", 1), ("x", 1)],
          "L_{a,b} L_{b,c} = q(b) L_{a,c}")
def _lcomp(E, a, b, c, x):
    return E.t(a, b, E.t(b, c, x)) - E.smul(E.q(b), E.t(a, c, x))


@register("S-pair", "ternary", [("a", 2), ("b", 2), ("y", 1)], "S_{a,b} S_{b,a} = q(a) q(b) id")
def _spair(E, a, b, y):
    return E.t(a, E.t(b, y, a), b) - E.smul(E.mul(E.q(a), E.q(b)), y)


@register("LR-commute", "ternary", [("a", 1), ("b", 1), ("c", 1), ("d", 1), ("x", 1)],
          "L_{a,b} R_{c,d} = R_{c,d} L_{a,b}")
def _lrc(E, a, b, c, d, x):
    return E.t(a, b, E.t(x, d, c)) - E.t(E.t(a, b, x), d, c)


@register("S-triple", "ternary",
          [("a", 1), ("b", 1), ("u", 1), ("v", 1), ("y", 1), ("z", 1), ("w", 1)],
          "S_{a,b} S_{u,v} S_{y,z} = S_{<avy>,<zub>}")
def _sss(E, a, b, u, v, y, z, w):
    return E.t(a, E.t(u, E.t(y, w, z), v), b) - E.t(E.t(a, v, y), w, E.t(z, u, b))


@register("R-rule", "ternary", [("w", 1), ("x2", 1), ("x3", 1), ("x4", 1), ("x5", 1)],
          "R_{<x3 x4 x5>, x2} = R_{x5, x4} R_{x3, x2}")
def _rrule(E, w, x2, x3, x4, x5):
    return E.t(w, x2, E.t(x3, x4, x5)) - E.t(E.t(w, x2, x3), x4, x5)


# q-analogs of loop identities

@register("qChasles-left", "ternary", [("a", 1), ("b", 2), ("d", 1), ("x", 1)],
          "<ab<bdx>> = q(b) <adx>")
def _qcl(E, a, b, d, x):
    return E.t(a, b, E.t(b, d, x)) - E.smul(E.q(b), E.t(a, d, x))


@register("qChasles-right", "ternary", [("u", 1), ("z", 1), ("b", 2), ("x", 1)],
          "<<uzb>bx> = q(b) <uzx>")
def _qcr(E, u, z, b, x):
    return E.t(E.t(u, z, b), b, x) - E.smul(E.q(b), E.t(u, z, x))


@register("qAutotopy-left", "ternary", [("a", 3), ("b", 3), ("x", 1), ("y", 1), ("z", 1)],
          "<<xba><yba><zab>> = q(a) q(b) <<xyz>ab>")
def _qal(E, a, b, x, y, z):
    lhs = E.t(E.t(x, b, a), E.t(y, b, a), E.t(z, a, b))
    return lhs - E.smul(E.mul(E.q(a), E.q(b)), E.t(E.t(x, y, z), a, b))


@register("qAutotopy-left-alt", "ternary", [("a", 3), ("b", 3), ("x", 1), ("y", 1), ("z", 1)],
          "<<xab><yba><zba>> = q(a) q(b) <<xyz>ab>")
def _qal2(E, a, b, x, y, z):
    lhs = E.t(E.t(x, a, b), E.t(y, b, a), E.t(z, b, a))
    return lhs - E.smul(E.mul(E.q(a), E.q(b)), E.t(E.t(x, y, z), a, b))


@register("qAutotopy-right", "ternary", [("a", 3), ("b", 3), ("x", 1), ("y", 1), ("z", 1)],
          "<<abx><bay><baz>> = q(a) q(b) <ab<xyz>>")
def _qar(E, a, b, x, y, z):
    lhs = E.t(E.t(a, b, x), E.t(b, a, y), E.t(b, a, z))
    return lhs - E.smul(E.mul(E.q(a), E.q(b)), E.t(a, b, E.t(x, y, z)))


@register("qInverse-left", "ternary", [("x", 2), ("y", 4), ("u", 1)],
          "<xy<<yxy>yu>> = q(x) q(y)^2 u = <<yxy>y<xyu>>")
def _qil(E, x, y, u):
    w = E.t(y, x, y)
    s = E.smul(E.mul(E.q(x), E.mul(E.q(y), E.q(y))), u)
    return [E.t(x, y, E.t(w, y, u)) - s, E.t(w, y, E.t(x, y, u)) - s]


@register("qInverse-right", "ternary", [("x", 2), ("y", 4), ("u", 1)],
          "<<uy<yxy>>yx> = q(x) q(y)^2 u = <<uyx>y<yxy>>")
def _qir(E, x, y, u):
    w = E.t(y, x, y)
    s = E.smul(E.mul(E.q(x), E.mul(E.q(y), E.q(y))), u)
    return [E.t(E.t(u, y, w), y, x) - s, E.t(E.t(u, y, x), y, w) - s]


# -- binary algebra identities ----------------------------------------------------

@register("unit", "binary", [("x", 1)], "1 x = x = x 1")
def _unit(E, x):
    one = E.unit(x.shape[0])
    return [E.m(one, x) - x, E.m(x, one) - x]


@register("commutative", "binary", [("x", 1), ("y", 1)], "xy = yx")
def _bcomm(E, x, y):
    return E.m(x, y) - E.m(y, x)


@register("associative", "binary", [("x", 1), ("y", 1), ("z", 1)], "(xy)z = x(yz)")
def _bassoc(E, x, y, z):
    return E.m(E.m(x, y), z) - E.m(x, E.m(y, z))


@register("alternative", "binary", [("x", 2), ("y", 1)], "x(xy) = (xx)y and (yx)x = y(xx)")
def _balt(E, x, y):
    xx = E.m(x, x)
    return [E.m(x, E.m(x, y)) - E.m(xx, y), E.m(E.m(y, x), x) - E.m(y, xx)]


@register("flexible", "binary", [("x", 2), ("y", 1)], "(xy)x = x(yx)")
def _bflex(E, x, y):
    return E.m(E.m(x, y), x) - E.m(x, E.m(y, x))


@register("moufang", "binary", [("a", 2), ("x", 1), ("y", 1)], "(ax)(ya) = a((xy)a)")
def _bmouf(E, a, x, y):
    return E.m(E.m(a, x), E.m(y, a)) - E.m(a, E.m(E.m(x, y), a))


@register("involutive", "binary", [("x", 1)], "(x^#)^# = x")
def _binv(E, x):
    return E.conj(E.conj(x)) - x


@register("anti-automorphism", "binary", [("x", 1), ("y", 1)], "(xy)^# = y^# x^#")
def _banti(E, x, y):
    return E.conj(E.m(x, y)) - E.m(E.conj(y), E.conj(x))


@register("trivial-involution", "binary", [("x", 1)], "x^# = x")
def _btriv(E, x):
    return E.conj(x) - x


@register("scalar-norm", "binary", [("x", 2)], "x x^# = N(x) 1 = x^# x")
def _bnorm(E, x):
    s = E.smul(E.q(x), E.unit(x.shape[0]))
    xs = E.conj(x)
    return [E.m(x, xs) - s, E.m(xs, x) - s]


@register("scalar-trace", "binary", [("x", 1)], "x + x^# = b_N(1, x) 1")
def _btrace(E, x):
    one = E.unit(x.shape[0])
    return x + E.conj(x) - E.smul(E.bq(one, x), one)


@register("central-trace", "binary", [("x", 1), ("y", 1), ("z", 1)],
          "x + x^# commutes and associates with everything")
def _bctr(E, x, y, z):
    c = x + E.conj(x)
    return [E.m(c, y) - E.m(y, c), E.m(E.m(c, y), z) - E.m(c, E.m(y, z)),
            E.m(E.m(y, c), z) - E.m(y, E.m(c, z)), E.m(E.m(y, z), c) - E.m(y, E.m(z, c))]


@register("central-norm", "binary", [("x", 2), ("y", 1), ("z", 1)],
          "x x^# commutes and associates with everything")
def _bcnorm(E, x, y, z):
    c = E.m(x, E.conj(x))
    return [E.m(c, y) - E.m(y, c), E.m(E.m(c, y), z) - E.m(c, E.m(y, z)),
            E.m(E.m(y, c), z) - E.m(y, E.m(c, z)), E.m(E.m(y, z), c) - E.m(y, E.m(z, c))]


@register("composition", "binary", [("x", 2), ("y", 2)], "N(xy) = N(x) N(y)")
def _bcomp(E, x, y):
    return E.q(E.m(x, y)) - E.mul(E.q(x), E.q(y))


@register("cayley-hamilton", "binary", [("x", 2)], "x^2 - t(x) x + N(x) 1 = 0")
def _bch(E, x):
    one = E.unit(x.shape[0])
    return E.m(x, x) - E.smul(E.bq(one, x), x) + E.smul(E.q(x), one)


def get_identity(ident) -> Identity:
    key = str(ident.value if isinstance(ident, IdentityId) else ident)
    if key in ("AT2",):
        key = "PA"
    if key in ("MT1",):
        key = "A2"
    if key in ("MT2",):
        key = "A3"
    try:
        return REGISTRY[key]
    except KeyError:
        raise KeyError(f"unknown identity {ident!r}") from None


# -- point sets and sweeps -----------------------------------------------------------

def _basis_points(R, n, degree):
    E = R.identity(n)
    if degree == 1:
        return E
    if degree == 2:
        rows = [E[i] for i in range(n)]
        rows += [R.reduce(E[i] + E[j]) for i in range(n) for j in range(i + 1, n)]
        return np.array(rows, dtype=E.dtype)
    raise InfeasibleStrategy(f"exhaustive-basis cannot certify an argument of degree {degree}")


def _points(R: RingSpec, n: int, degrees, strategy: Strategy):
    kind = strategy.kind
    if kind == "exhaustive":
        if max(degrees) <= 2:
            kind = "exhaustive-basis"
        elif R.is_finite or strategy.box is not None:
            kind = "exhaustive-module"
        else:
            kind = "sampled"
    if kind == "exhaustive-basis":
        return kind, [_basis_points(R, n, d) for d in degrees]
    if kind == "exhaustive-module":
        if not R.is_finite and strategy.box is None:
            raise InfeasibleStrategy(f"exhaustive-module over {R} needs a coordinate box")
        full = R.vector_array(n, strategy.box)
        # zero rows change nothing in a homogeneous identity
        full = full[np.any(full != 0, axis=1)]
        return kind, [R.identity(n) if d == 1 else full for d in degrees]
    if kind == "sampled":
        return kind, None
    raise InfeasibleStrategy(f"unknown strategy {kind!r}")


def _chunk_size(n, nvars):
    return max(256, min(1 << 16, (1 << 23) // (n ** 3 * max(nvars, 1))))


def run_identity(obj, ident: Identity, strategy: Strategy) -> VerificationReport:
    E = Evaluator.of(obj)
    if ident.kind == "ternary" and E.ternary is None:
        raise InfeasibleStrategy(f"{ident.name} needs a ternary product")
    if ident.kind == "binary" and E.binary is None:
        raise InfeasibleStrategy(f"{ident.name} needs a binary algebra")
    R, n = E.R, E.rank
    kind, pts = _points(R, n, ident.degrees, strategy)
    label = strategy.describe(kind)
    if kind == "sampled":
        rng = np.random.default_rng(strategy.seed)
        arrays = [R.random_vectors(rng, strategy.count, n, strategy.bound)
                  for _ in ident.variables]
        total = strategy.count
        step = _chunk_size(n, len(arrays))
        for s in range(0, total, step):
            part = [a[s:s + step] for a in arrays]
            bad = _first_bad(ident.evaluate(E, part))
            if bad is not None:
                w = tuple(R.to_tuple(a[s + bad]) for a in arrays)
                return VerificationReport(ident.name, "fails", label, w, ident.names, s + bad + 1)
        return VerificationReport(ident.name, "holds", label, None, ident.names, total)
    if kind == "exhaustive-module" and ident.name in AUTOTOPY_FORMS:
        return _run_autotopy(E.ternary, ident, pts[0], label)
    sizes = [len(p) for p in pts]
    total = math.prod(sizes)
    if total > MAX_TUPLES:
        raise InfeasibleStrategy(f"{total} tuples exceed the limit of {MAX_TUPLES}")
    step = _chunk_size(n, len(sizes))
    for s in range(0, total, step):
        flat = np.arange(s, min(total, s + step))
        idx = np.unravel_index(flat, sizes)
        part = [p[i] for p, i in zip(pts, idx)]
        bad = _first_bad(ident.evaluate(E, part))
        if bad is not None:
            w = tuple(R.to_tuple(p[i[bad]]) for p, i in zip(pts, idx))
            return VerificationReport(ident.name, "fails", label, w, ident.names, s + bad + 1)
    return VerificationReport(ident.name, "holds", label, None, ident.names, total)


# Autotopy-type identities  f0 <xyz> = s(a,b) <f1 x, f2 y, f3 z>  where the f's are
# inner operators built from the parameters a, b.  Each operator is written as a
# pattern with "_" for the free slot, e.g. "_ba" is x -> <xba>.  For fixed (a, b)
# the identity is a tensor equation on the structure constants, linear in
# x, y, z, so the basis suffices there and only (a, b) need enumerating.
AUTOTOPY_FORMS = {
    "qAutotopy-left": ("_ba", "_ba", "_ab", "_ab"),
    "qAutotopy-left-alt": ("_ab", "_ba", "_ba", "_ab"),
    "qAutotopy-right": ("ab_", "ba_", "ba_", "ab_"),
}


def operator_batch(alg: TernaryAlgebra, pattern: str, A, B) -> np.ndarray:
    """Matrices (N, n, n) of the inner operator ``pattern`` for rows of A, B."""
    R, C = alg.ring, alg.C
    args = {"a": A, "b": B}
    letters = "ijk"
    free = pattern.index("_")
    subs, ops = [], []
    for pos, ch in enumerate(pattern):
        if pos != free:
            subs.append("N" + letters[pos])
            ops.append(args[ch])
    spec = f"ijkl,{subs[0]},{subs[1]}->Nl{letters[free]}"
    bound = (_amax(C) * _amax(A) * _amax(B) * alg.rank ** 2) if R.kind == "int" else 0
    return _ring_op(R, bound, lambda C, U, V: np.einsum(spec, C, U, V), C, *ops)


def _autotopy_residual(alg: TernaryAlgebra, forms, A, B) -> np.ndarray:
    """(N, n, n, n, n) difference <f1 x, f2 y, f3 z> - s f0 <xyz> on basis x, y, z."""
    R, C = alg.ring, alg.C
    F1, F2, F3, F0 = (operator_batch(alg, f, A, B) for f in forms)
    sp = alg.space
    qa = _ring_op(R, 0 if R.kind != "int" else _amax(sp.B) * _amax(A) ** 2 * alg.rank ** 2,
                  lambda Bm, X: np.einsum("ni,ij,nj->n", X, Bm, X), sp.B, A)
    qb = _ring_op(R, 0 if R.kind != "int" else _amax(sp.B) * _amax(B) ** 2 * alg.rank ** 2,
                  lambda Bm, X: np.einsum("ni,ij,nj->n", X, Bm, X), sp.B, B)
    if R.kind == "int":
        F1, F2, F3, F0, qa, qb = (_to_object_arr(a) for a in (F1, F2, F3, F0, qa, qb))
        C = _to_object_arr(C)
    lhs = np.einsum("ijkl,Nip->Npjkl", C, F1)
    lhs = R.reduce(lhs) if R.kind != "int" else lhs
    lhs = np.einsum("Npjkl,Njq->Npqkl", lhs, F2)
    lhs = R.reduce(lhs) if R.kind != "int" else lhs
    lhs = np.einsum("Npqkl,Nkr->Npqrl", lhs, F3)
    rhs = np.einsum("Nlm,pqrm->Npqrl", F0, C)
    rhs = (qa * qb)[:, None, None, None, None] * rhs
    return R.reduce(lhs - rhs)


def _to_object_arr(a):
    return a if a.dtype == object else a.astype(object)


def _unit_normalized(R: RingSpec, X: np.ndarray) -> np.ndarray:
    """Drop rows u*v with u a unit other than 1 and v kept; homogeneous
    identities hold at u*v iff they hold at v."""
    keep = []
    for row in X:
        lead = next((c for c in row if c != 0), None)
        if lead is None:
            continue
        if R.is_invertible(lead) and R(lead) != R.one:
            continue
        keep.append(row)
    return np.array(keep, dtype=X.dtype).reshape(-1, X.shape[1])


def _run_autotopy(alg: TernaryAlgebra, ident: Identity, full: np.ndarray,
                  label: str) -> VerificationReport:
    R, n = alg.ring, alg.rank
    forms = AUTOTOPY_FORMS[ident.name]
    pts = _unit_normalized(R, full)
    k = len(pts)
    total = k * k * n ** 3
    step = max(1, (1 << 22) // n ** 4)
    flat_all = k * k
    for s in range(0, flat_all, step):
        idx = np.arange(s, min(flat_all, s + step))
        ia, ib = np.unravel_index(idx, (k, k))
        diff = _autotopy_residual(alg, forms, pts[ia], pts[ib])
        bad = np.flatnonzero(np.any(diff.reshape(len(idx), -1) != 0, axis=1))
        if len(bad):
            N = int(bad[0])
            p, q, r = (int(v) for v in np.argwhere(np.any(diff[N] != 0, axis=3))[0])
            E = R.identity(n)
            w = (R.to_tuple(pts[ia[N]]), R.to_tuple(pts[ib[N]]),
                 R.to_tuple(E[p]), R.to_tuple(E[q]), R.to_tuple(E[r]))
            return VerificationReport(ident.name, "fails", label + "+operator", w,
                                      ident.names, (s + N) * n ** 3 + 1)
    return VerificationReport(ident.name, "holds", label + "+operator", None, ident.names,
                              total, "parameters taken up to unit multiples")


def _first_bad(diff):
    nz = np.any(diff != 0, axis=1)
    hits = np.flatnonzero(nz)
    return int(hits[0]) if len(hits) else None


def verify(obj, identity, strategy=None) -> VerificationReport:
    """Check one identity on a ternary algebra, binary algebra or quadratic space."""
    return run_identity(obj, get_identity(identity), Strategy.parse(strategy))


def evaluate_identity(obj, identity, *vectors) -> tuple:
    """LHS - RHS of an identity at one argument tuple (all components)."""
    ident = get_identity(identity)
    E = Evaluator.of(obj)
    arrays = [prep(E.R, v) for v in vectors]
    return E.R.to_tuple(ident.evaluate(E, arrays)[0])


def recheck(obj, report: VerificationReport) -> bool:
    """True when the report's witness really violates its identity."""
    if report.witness is None:
        return False
    return any(c != 0 for c in evaluate_identity(obj, report.identity, *report.witness))
