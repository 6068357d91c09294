"""Finite binary and ternary magmas: Cayley tables, loop properties, autotopies.

Elements are kept as an ordered list of labels and products work on element
indices.  A magma either holds a materialized numpy table or a vectorized
``op`` callable (lazy ternary tables); every check goes through ``op`` so the
two behave the same.  All checks are exhaustive unless a sampled strategy is
passed explicitly.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import (ArityMismatch, EmptySphere, NotInverseLoop, TableTooLarge,
                     UnsupportedRing)
from .verify import Strategy, VerificationReport

DEFAULT_MAX_TABLE = 64
LAZY_TERNARY_ABOVE = 16
_CHUNK = 1 << 20


def max_table() -> int:
    """Element cap for magmas, overridable through SPHERE_MAX_TABLE."""
    raw = os.environ.get("SPHERE_MAX_TABLE")
    if raw is None:
        return DEFAULT_MAX_TABLE
    try:
        return int(raw)
    except ValueError:
        raise TableTooLarge(f"SPHERE_MAX_TABLE={raw!r} is not an integer") from None


class FiniteMagma:
    def __init__(self, elements, arity: int = 2, table=None, op=None, label: str = "",
                 cap: int | None = None):
        self.elements = list(elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("element labels must be unique")
        if arity not in (2, 3):
            raise ArityMismatch("arity must be 2 or 3")
        limit = max_table() if cap is None else cap
        if len(self.elements) > limit:
            raise TableTooLarge(f"{len(self.elements)} elements exceed the cap of {limit}")
        self.arity = arity
        self.index = {x: i for i, x in enumerate(self.elements)}
        self.label = label
        k = len(self.elements)
        if table is not None:
            t = np.asarray(table, dtype=np.int64)
            if t.shape != (k,) * arity:
                raise ArityMismatch(f"table shape {t.shape} does not fit {k} elements")
            if t.size and (t.min() < 0 or t.max() >= k):
                raise ValueError("table entries must be element indices")
            self.table = t
            self._op = None
        elif op is not None:
            self.table = None
            self._op = op
        else:
            raise ValueError("give a table or an op")

    # -- construction -----------------------------------------------------
    @classmethod
    def from_function(cls, elements, fn, arity=2, label="", cap=None) -> "FiniteMagma":
        """Materialize a table from a product on labels."""
        els = list(elements)
        idx = {x: i for i, x in enumerate(els)}
        k = len(els)
        limit = max_table() if cap is None else cap
        if k > limit:
            raise TableTooLarge(f"{k} elements exceed the cap of {limit}")
        t = np.empty((k,) * arity, dtype=np.int64)
        for pos in np.ndindex(*t.shape):
            t[pos] = idx[fn(*(els[i] for i in pos))]
        return cls(els, arity, table=t, label=label, cap=cap)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_lazy(self) -> bool:
        return self.table is None

    def __repr__(self):
        kind = "binary" if self.arity == 2 else "ternary"
        return f"FiniteMagma({self.label or 'unnamed'}, {kind}, {self.order} elements)"

    def op(self, *idx):
        """Vectorized product on index arrays."""
        if len(idx) != self.arity:
            raise ArityMismatch(f"expected {self.arity} arguments")
        if self.table is not None:
            return self.table[idx]
        return np.asarray(self._op(*[np.asarray(i) for i in idx]), dtype=np.int64)

    def materialize(self) -> np.ndarray:
        if self.table is None:
            k = self.order
            grids = np.indices((k,) * self.arity).reshape(self.arity, -1)
            self.table = self.op(*grids).reshape((k,) * self.arity)
        return self.table

    def product(self, *xs):
        """Product of labels."""
        i = self.op(*[np.array([self.index[x]]) for x in xs])
        return self.elements[int(i[0])]

    # -- binary structure ---------------------------------------------------
    def _need(self, arity):
        if self.arity != arity:
            raise ArityMismatch(f"this needs a {'binary' if arity == 2 else 'ternary'} magma")

    def unit_index(self):
        self._need(2)
        T = self.materialize()
        k = self.order
        r = np.arange(k)
        for e in range(k):
            if np.array_equal(T[e], r) and np.array_equal(T[:, e], r):
                return e
        return None

    def inverse_map(self) -> np.ndarray:
        """x -> x^-1 with x x^-1 = e = x^-1 x; raises NotInverseLoop if missing."""
        self._need(2)
        e = self.unit_index()
        if e is None:
            raise NotInverseLoop("no unit element")
        T = self.materialize()
        inv = np.empty(self.order, dtype=np.int64)
        for x in range(self.order):
            hits = np.flatnonzero((T[x] == e) & (T[:, x] == e))
            if len(hits) != 1:
                raise NotInverseLoop(f"{self.elements[x]} has no two-sided inverse")
            inv[x] = hits[0]
        return inv

    def left_map(self, a) -> np.ndarray:
        """L_a as an index permutation."""
        self._need(2)
        return self.materialize()[a].copy()

    def right_map(self, a) -> np.ndarray:
        self._need(2)
        return self.materialize()[:, a].copy()

    def bi_map(self, a) -> np.ndarray:
        """B_a = L_a R_a."""
        return self.left_map(a)[self.right_map(a)]

    def element_order(self, x) -> int:
        """Smallest n with the left-bracketed power x^n = e."""
        e = self.unit_index()
        if e is None:
            raise NotInverseLoop("no unit element")
        T = self.materialize()
        p, n = x, 1
        while p != e:
            p = T[p, x]
            n += 1
            if n > self.order:
                return 0
        return n

    def order_profile(self) -> tuple:
        """Sorted tuple of element orders."""
        return tuple(sorted(self.element_order(x) for x in range(self.order)))

    # -- ternary structure ---------------------------------------------------
    def ternary_operator(self, kind, a, b) -> np.ndarray:
        """L_{a,b} z = (abz), R_{a,b} x = (xba), S_{a,b} y = (ayb), B_{a,b} = L R."""
        self._need(3)
        k = self.order
        r = np.arange(k)
        A, Bv = np.full(k, a), np.full(k, b)
        if kind == "L":
            return self.op(A, Bv, r)
        if kind == "R":
            return self.op(r, Bv, A)
        if kind == "S":
            return self.op(A, r, Bv)
        if kind == "B":
            return self.ternary_operator("L", a, b)[self.ternary_operator("R", a, b)]
        raise ValueError(f"unknown operator kind {kind!r}")

    # -- text format ----------------------------------------------------------
    def to_text(self) -> str:
        T = self.materialize()
        els = [str(x) for x in self.elements]
        for x in els:
            if not x or any(c.isspace() or c == "," for c in x):
                raise ValueError(f"label {x!r} cannot be written to a table file")
        lines = ["elements: " + ",".join(els)]
        if self.arity == 2:
            lines += [" ".join(els[j] for j in row) for row in T]
        else:
            for block in T:
                lines += [" ".join(els[j] for j in row) for row in block]
                lines.append("")
            lines.pop()
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, label: str = "") -> "FiniteMagma":
        raw = [ln.strip() for ln in text.splitlines()]
        head = next((ln for ln in raw if ln), "")
        if not head.startswith("elements:"):
            raise ValueError("table file must start with 'elements: a,b,...'")
        els = [s.strip() for s in head[len("elements:"):].split(",") if s.strip()]
        rows = [ln.split() for ln in raw[raw.index(head) + 1:] if ln]
        k = len(els)
        idx = {x: i for i, x in enumerate(els)}
        if any(len(r) != k for r in rows):
            raise ValueError(f"every row needs {k} entries")
        try:
            flat = [[idx[x] for x in r] for r in rows]
        except KeyError as exc:
            raise ValueError(f"unknown label {exc.args[0]!r} in table") from None
        if len(rows) == k:
            return cls(els, 2, table=np.array(flat), label=label)
        if len(rows) == k * k:
            return cls(els, 3, table=np.array(flat).reshape(k, k, k), label=label)
        raise ValueError(f"expected {k} or {k * k} rows, found {len(rows)}")


# -- property checks ------------------------------------------------------------

@dataclass(frozen=True)
class _Prop:
    arity: int
    variables: tuple
    fn: object  # (m, *index arrays) -> list of (lhs, rhs) arrays


PROPERTIES: dict[str, _Prop] = {}


def _prop(name, arity, variables):
    def deco(fn):
        PROPERTIES[name] = _Prop(arity, tuple(variables), fn)
        return fn
    return deco


def _b(m, x, y):
    return m.op(x, y)


def _t(m, x, y, z):
    return m.op(x, y, z)


@_prop("associative", 2, "xyz")
def _p_assoc(m, x, y, z):
    return [(_b(m, _b(m, x, y), z), _b(m, x, _b(m, y, z)))]


@_prop("commutative", 2, "xy")
def _p_comm(m, x, y):
    return [(_b(m, x, y), _b(m, y, x))]


@_prop("flexible", 2, "xy")
def _p_flex(m, x, y):
    return [(_b(m, _b(m, x, y), x), _b(m, x, _b(m, y, x)))]


@_prop("alternative", 2, "xy")
def _p_alt(m, x, y):
    xx = _b(m, x, x)
    return [(_b(m, x, _b(m, x, y)), _b(m, xx, y)), (_b(m, _b(m, y, x), x), _b(m, y, xx))]


@_prop("moufang", 2, "axy")
def _p_mouf(m, a, x, y):
    return [(_b(m, _b(m, a, x), _b(m, y, a)), _b(m, a, _b(m, _b(m, x, y), a)))]


@_prop("M1", 2, "zxy")
def _p_m1(m, z, x, y):
    return [(_b(m, z, _b(m, x, _b(m, z, y))), _b(m, _b(m, _b(m, z, x), z), y))]


@_prop("M2", 2, "yzx")
def _p_m2(m, y, z, x):
    return [(_b(m, _b(m, _b(m, y, z), x), z), _b(m, y, _b(m, z, _b(m, x, z))))]


@_prop("IP", 3, "xy")
def _p_ip(m, x, y):
    return [(_t(m, x, y, y), x), (_t(m, y, y, x), x)]


@_prop("AT1", 3, "abcde")
def _p_at1(m, a, b, c, d, e):
    r = _t(m, _t(m, a, b, c), d, e)
    return [(_t(m, a, b, _t(m, c, d, e)), r), (_t(m, a, _t(m, b, c, d), e), r)]


@_prop("AT2", 3, "abcde")
def _p_at2(m, a, b, c, d, e):
    r = _t(m, _t(m, a, b, c), d, e)
    return [(_t(m, a, b, _t(m, c, d, e)), r), (_t(m, a, _t(m, d, c, b), e), r)]


@_prop("ternary-commutative", 3, "xyz")
def _p_tcomm(m, x, y, z):
    return [(_t(m, x, y, z), _t(m, z, y, x))]


@_prop("ternary-inverse-loop", 3, "xyu")
def _p_til(m, x, y, u):
    w = _t(m, y, x, y)
    return [(_t(m, x, y, _t(m, w, y, u)), u), (_t(m, w, y, _t(m, x, y, u)), u),
            (_t(m, _t(m, u, y, w), y, x), u), (_t(m, _t(m, u, y, x), y, w), u)]


@_prop("left-chasles", 3, "xyzu")
def _p_lch(m, x, y, z, u):
    return [(_t(m, x, y, _t(m, y, z, u)), _t(m, x, z, u))]


@_prop("right-chasles", 3, "uzyx")
def _p_rch(m, u, z, y, x):
    return [(_t(m, _t(m, u, z, y), y, x), _t(m, u, z, x))]


@_prop("left-ternary-moufang-autotopy", 3, "abxyz")
def _p_ltm(m, a, b, x, y, z):
    lhs = _t(m, _t(m, x, b, a), _t(m, y, b, a), _t(m, z, a, b))
    return [(lhs, _t(m, _t(m, x, y, z), a, b))]


@_prop("right-ternary-moufang-autotopy", 3, "abxyz")
def _p_rtm(m, a, b, x, y, z):
    lhs = _t(m, _t(m, a, b, x), _t(m, b, a, y), _t(m, b, a, z))
    return [(lhs, _t(m, a, b, _t(m, x, y, z)))]


@_prop("MT1", 3, "uvxy")
def _p_mt1(m, u, v, x, y):
    return [(_t(m, _t(m, u, v, x), y, x), _t(m, u, v, _t(m, x, y, x)))]


@_prop("MT2", 3, "xyz")
def _p_mt2(m, x, y, z):
    return [(_t(m, x, y, _t(m, x, y, z)), _t(m, _t(m, x, y, x), y, z))]


@_prop("operator-inverses", 3, "xyu")
def _p_opinv(m, x, y, u):
    return [(_t(m, x, y, _t(m, y, x, u)), u), (_t(m, _t(m, u, x, y), y, x), u),
            (_t(m, x, _t(m, y, u, x), y), u)]


@_prop("ternary-flexible", 3, "ayx")
def _p_tflex(m, a, y, x):
    return [(_t(m, a, y, _t(m, x, y, a)), _t(m, _t(m, a, y, x), y, a))]


@_prop("automorphic-inverse", 3, "yxz")
def _p_autinv(m, y, x, z):
    return [(_t(m, y, _t(m, x, y, z), y), _t(m, _t(m, y, z, y), y, _t(m, y, x, y)))]


@_prop("inversion-involutive", 3, "yx")
def _p_invinv(m, y, x):
    return [(_t(m, y, _t(m, y, x, y), y), x)]


@_prop("left-B-autotopy", 3, "abxyz")
def _p_lb(m, a, b, x, y, z):
    def B(v):
        return _t(m, a, b, _t(m, v, b, a))
    return [(_t(m, B(x), B(y), _t(m, a, b, z)), _t(m, a, b, _t(m, x, y, z)))]


@_prop("right-B-autotopy", 3, "abxyz")
def _p_rb(m, a, b, x, y, z):
    def B(v):
        return _t(m, a, b, _t(m, v, b, a))
    return [(_t(m, _t(m, x, b, a), B(y), B(z)), _t(m, _t(m, x, y, z), b, a))]


@_prop("reflection-space", 3, "xyz")
def _p_refl(m, x, y, z):
    def s(a, v):
        return _t(m, a, v, a)
    return [(s(x, x), x), (s(x, s(x, y)), y), (s(x, s(y, s(x, z))), s(s(x, y), z))]


# properties that are not single identities
_STRUCTURAL = ("quasigroup", "loop", "inverse-loop", "ternary-quasigroup", "torsor",
               "left-half-torsor", "right-half-torsor", "left-ternary-moufang",
               "right-ternary-moufang")
ALIASES = {"defining": "moufang", "PA": "AT2"}


def property_names() -> list[str]:
    return list(_STRUCTURAL) + list(PROPERTIES)


def _labels(m, idx):
    return tuple(m.elements[int(i)] for i in idx)


def _sweep(m: FiniteMagma, name: str, prop: _Prop, strategy: Strategy) -> VerificationReport:
    k, nv = m.order, len(prop.variables)
    names = tuple(prop.variables)
    if strategy.kind == "sampled":
        rng = np.random.default_rng(strategy.seed)
        cols = rng.integers(0, k, size=(nv, strategy.count))
        label = strategy.describe("sampled")
        bad = _first_violation(m, prop, list(cols))
        if bad is not None:
            return VerificationReport(name, "fails", label, _labels(m, cols[:, bad]), names,
                                      bad + 1)
        return VerificationReport(name, "holds", label, None, names, strategy.count)
    total = k ** nv
    for s in range(0, total, _CHUNK):
        flat = np.arange(s, min(total, s + _CHUNK))
        cols = np.unravel_index(flat, (k,) * nv)
        bad = _first_violation(m, prop, list(cols))
        if bad is not None:
            w = tuple(c[bad] for c in cols)
            return VerificationReport(name, "fails", "exhaustive", _labels(m, w), names,
                                      s + bad + 1)
    return VerificationReport(name, "holds", "exhaustive", None, names, total)


def _first_violation(m, prop, cols):
    wrong = None
    for lhs, rhs in prop.fn(m, *cols):
        w = np.asarray(lhs) != np.asarray(rhs)
        wrong = w if wrong is None else wrong | w
    hits = np.flatnonzero(wrong)
    return int(hits[0]) if len(hits) else None


def _holds(name):
    return VerificationReport(name, "holds", "exhaustive")


def _fails(name, witness=None, variables=(), detail=""):
    return VerificationReport(name, "fails", "exhaustive", witness, variables, 0, detail)


def _structural(m: FiniteMagma, name: str, strategy: Strategy) -> VerificationReport:
    k = m.order
    if name == "quasigroup":
        m._need(2)
        T = m.materialize()
        for x in range(k):
            if len(set(T[x].tolist())) != k:
                return _fails(name, (m.elements[x],), ("x",), "row of L_x is not a permutation")
            if len(set(T[:, x].tolist())) != k:
                return _fails(name, (m.elements[x],), ("x",), "R_x is not a permutation")
        return _holds(name)
    if name == "loop":
        q = _structural(m, "quasigroup", strategy)
        if not q:
            return q
        return _holds(name) if m.unit_index() is not None else _fails(name, detail="no unit")
    if name == "inverse-loop":
        lp = _structural(m, "loop", strategy)
        if not lp:
            return lp
        try:
            inv = m.inverse_map()
        except NotInverseLoop as exc:
            return _fails(name, detail=str(exc))
        T = m.materialize()
        x, y = np.indices((k, k))
        ix = inv[x]
        for lhs, rhs in ((T[ix, T[x, y]], y), (T[x, T[ix, y]], y),
                         (T[T[y, x], ix], y), (T[T[y, ix], x], y)):
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                a, b = bad[0]
                return _fails(name, _labels(m, (a, b)), ("x", "y"))
        return _holds(name)
    if name == "ternary-quasigroup":
        m._need(3)
        for a in range(k):
            for b in range(k):
                for kind in ("L", "R", "S"):
                    if len(set(m.ternary_operator(kind, a, b).tolist())) != k:
                        return _fails(name, _labels(m, (a, b)), ("a", "b"),
                                      f"{kind} operator not bijective")
        return _holds(name)
    if name == "torsor":
        return _all(m, name, ("IP", "AT2"), strategy)
    if name == "left-half-torsor":
        return _all(m, name, ("IP", "ternary-inverse-loop", "left-chasles"), strategy)
    if name == "right-half-torsor":
        return _all(m, name, ("IP", "ternary-inverse-loop", "right-chasles"), strategy)
    if name == "left-ternary-moufang":
        return _all(m, name, ("left-half-torsor", "left-ternary-moufang-autotopy"), strategy)
    if name == "right-ternary-moufang":
        return _all(m, name, ("right-half-torsor", "right-ternary-moufang-autotopy"), strategy)
    raise KeyError(name)


def _all(m, name, parts, strategy):
    for p in parts:
        r = check_property(m, p, strategy)
        if not r:
            return VerificationReport(name, "fails", r.strategy, r.witness, r.variables,
                                      r.checked, f"{p} fails")
    used = strategy.describe() if strategy.kind == "sampled" else "exhaustive"
    return VerificationReport(name, "holds", used)


def check_property(m: FiniteMagma, prop: str, strategy=None) -> VerificationReport:
    """Exhaustive (or explicitly sampled) check of a named loop property."""
    strategy = Strategy.parse(strategy) if not isinstance(strategy, Strategy) else strategy
    name = ALIASES.get(prop, prop)
    if name in _STRUCTURAL:
        return _structural(m, name, strategy)
    try:
        p = PROPERTIES[name]
    except KeyError:
        raise KeyError(f"unknown loop property {prop!r}") from None
    if p.arity != m.arity:
        raise ArityMismatch(f"{name} needs arity {p.arity}, the magma has arity {m.arity}")
    return _sweep(m, name, p, strategy)


# -- derived magmas ----------------------------------------------------------------

def homotope_at(m: FiniteMagma, y) -> FiniteMagma:
    """Binary product x z = (x y z) for a fixed middle label y."""
    m._need(3)
    yi = m.index[y]
    k = m.order
    x, z = np.indices((k, k))
    T = m.op(x, np.full_like(x, yi), z)
    return FiniteMagma(m.elements, 2, table=T, label=f"homotope of {m.label} at {y}")


def ternary_from_inverse_loop(m: FiniteMagma, side: str) -> FiniteMagma:
    """(xyz) = x (y^-1 z) for side 'left', (x y^-1) z for side 'right'."""
    m._need(2)
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if not check_property(m, "inverse-loop"):
        raise NotInverseLoop(f"{m.label or 'magma'} is not an inverse loop")
    T = m.materialize()
    inv = m.inverse_map()

    if side == "left":
        def op(x, y, z):
            return T[x, T[inv[y], z]]
    else:
        def op(x, y, z):
            return T[T[x, inv[y]], z]

    label = f"{side} ternary of {m.label}"
    if m.order > LAZY_TERNARY_ABOVE:
        return FiniteMagma(m.elements, 3, op=op, label=label)
    k = m.order
    g = np.indices((k, k, k))
    return FiniteMagma(m.elements, 3, table=op(*g), label=label)


# -- autotopies and triality -----------------------------------------------------------

@dataclass(frozen=True)
class Autotopy:
    """(f_1, ..., f_n; f_0) as index permutations."""
    maps: tuple
    target: tuple
    name: str = ""

    @classmethod
    def of(cls, maps, target, name=""):
        return cls(tuple(tuple(int(v) for v in f) for f in maps),
                   tuple(int(v) for v in target), name)

    def key(self):
        return self.maps, self.target


def autotopy_check(m: FiniteMagma, a: Autotopy) -> bool:
    """f_0(<x_1 .. x_n>) = <f_1 x_1 .. f_n x_n> on all tuples."""
    if len(a.maps) != m.arity:
        raise ArityMismatch("autotopy arity differs from the magma")
    k = m.order
    g = np.indices((k,) * m.arity).reshape(m.arity, -1)
    f0 = np.asarray(a.target)
    lhs = f0[m.op(*g)]
    rhs = m.op(*[np.asarray(f)[gi] for f, gi in zip(a.maps, g)])
    return bool(np.array_equal(lhs, rhs))


def triality_orbit(m: FiniteMagma, a: Autotopy) -> list:
    """The autotopy and its five transforms under inversion conjugation."""
    m._need(2)
    if not check_property(m, "inverse-loop"):
        raise NotInverseLoop("triality needs a binary inverse loop")
    j = m.inverse_map()
    f1, f2 = (np.asarray(f) for f in a.maps)
    f0 = np.asarray(a.target)

    def c(f):
        return j[f[j]]

    # T(f) = (j f0 j, f1; j f2 j) has order 3, S(f) = (j f2 j, j f1 j; j f0 j) order 2;
    # the orbit is f, Tf, T^2 f, Sf, STf, ST^2 f
    forms = [(f1, f2, f0), (c(f0), f1, c(f2)), (f2, c(f0), c(f1)),
             (c(f2), c(f1), c(f0)), (c(f1), f0, f2), (f0, c(f2), f1)]
    return [Autotopy.of((u, v), w) for u, v, w in forms]


def moufang_autotopy(m: FiniteMagma, a) -> Autotopy:
    """(L_a, R_a; B_a) for the element with label a."""
    i = m.index[a]
    return Autotopy.of((m.left_map(i), m.right_map(i)), m.bi_map(i), f"(L,R;B) at {a}")


def hexad(m: FiniteMagma, a) -> list:
    """The six Moufang autotopies attached to a, written with a and a^-1."""
    i = m.index[a]
    ii = int(m.inverse_map()[i])
    L, R, B = m.left_map, m.right_map, m.bi_map
    rows = [((L(i), R(i)), B(i), "(L_a,R_a;B_a)"),
            ((B(i), L(ii)), L(i), "(B_a,L_a^-1;L_a)"),
            ((R(i), B(ii)), R(ii), "(R_a,B_a^-1;R_a^-1)"),
            ((L(ii), R(ii)), B(ii), "(L_a^-1,R_a^-1;B_a^-1)"),
            ((B(ii), L(i)), L(ii), "(B_a^-1,L_a;L_a^-1)"),
            ((R(ii), B(i)), R(i), "(R_a^-1,B_a;R_a)")]
    return [Autotopy.of(maps, tgt, nm) for maps, tgt, nm in rows]


# -- sphere loops -----------------------------------------------------------------

def sphere_loop(alg, c, box: int | None = None, cap: int | None = None) -> FiniteMagma:
    """Ternary magma on the sphere q = c with (xyz) = <xyz> / c."""
    from .spherical import prep, sphere_enumerate
    R = alg.ring
    if R.kind == "rat":
        raise UnsupportedRing("sphere loops need Z/n or a box over Z")
    pts = sphere_enumerate(alg, c, box)
    if not pts:
        raise EmptySphere(f"the sphere q = {c} is empty")
    inv = R.invert(R(c))
    X = prep(R, pts)
    lookup = {p: i for i, p in enumerate(pts)}

    def op(i, j, kk):
        shape = np.shape(i)
        i, j, kk = (np.ravel(v) for v in (i, j, kk))
        out = np.empty(len(i), dtype=np.int64)
        for s in range(0, len(i), 1 << 16):
            sl = slice(s, s + (1 << 16))
            V = alg.triple_many(X[i[sl]], X[j[sl]], X[kk[sl]])
            V = R.reduce(V * inv)
            for t, row in enumerate(V.tolist()):
                key = tuple(R(v) for v in row)
                if key not in lookup:
                    raise EmptySphere(f"product {key} left the enumerated sphere")
                out[s + t] = lookup[key]
        return out.reshape(shape)

    label = f"sphere q={c} of {alg.label}"
    k = len(pts)
    m = FiniteMagma(pts, 3, op=op, label=label, cap=cap)
    if k <= LAZY_TERNARY_ABOVE:
        m.materialize()
    return m


def subset_table(m: FiniteMagma, labels) -> FiniteMagma:
    """Restrict a magma to a closed subset of labels."""
    idx = [m.index[x] for x in labels]
    pos = {i: n for n, i in enumerate(idx)}
    k = len(idx)
    g = np.indices((k,) * m.arity).reshape(m.arity, -1)
    vals = m.op(*[np.asarray(idx)[gi] for gi in g])
    try:
        t = np.array([pos[int(v)] for v in vals]).reshape((k,) * m.arity)
    except KeyError:
        raise ValueError("subset is not closed under the product") from None
    return FiniteMagma(list(labels), m.arity, table=t, label=f"sub of {m.label}")
