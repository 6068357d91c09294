"""Doubles of finite groups with a central involution.

D(G) = G_0 u G_1 carries a parity-graded product built from the group law,
an anti-automorphism ``#`` and two central parameters eps, mu (given as group
elements).  ``bullet`` is the product used for the left ternary law
a (b# c), ``bullet-prime`` its dual, used for the right law (a b#) c.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import (InvalidStageParameter, InvolutionNotAntiAutomorphism,
                     NonCentralParameter, NotInverseLoop)
from .loops import FiniteMagma, check_property

CONVENTIONS = ("bullet", "bullet-prime")


@dataclass(frozen=True)
class DoubledElement:
    base: object
    parity: int

    def __str__(self):
        return f"{self.base}_{self.parity}"


class FiniteGroup:
    """A finite group with an involutive anti-automorphism ``#`` (default: inverse)."""

    def __init__(self, magma: FiniteMagma, involution=None, label: str = "", minus=None,
                 check: bool = True):
        if magma.arity != 2:
            raise NotInverseLoop("a group needs a binary table")
        self.magma = magma
        self.label = label or magma.label
        if check and not check_property(magma, "associative"):
            raise NotInverseLoop(f"{self.label} is not associative")
        self.unit = magma.unit_index()
        if self.unit is None:
            raise NotInverseLoop(f"{self.label} has no unit")
        self.inverse = magma.inverse_map()
        self.involution = (self.inverse.copy() if involution is None
                           else np.asarray(involution, dtype=np.int64))
        self.center = self._center()
        # distinguished central element of order 2 used for the symbol "-1"
        self.minus = self._default_minus() if minus is None else minus
        self._check_involution()

    @classmethod
    def from_magma(cls, m: FiniteMagma, **kw) -> "FiniteGroup":
        return cls(m, **kw)

    @property
    def T(self):
        return self.magma.materialize()

    @property
    def order(self) -> int:
        return self.magma.order

    @property
    def elements(self):
        return self.magma.elements

    def __repr__(self):
        return f"FiniteGroup({self.label}, order {self.order})"

    def _center(self) -> list:
        T = self.T
        return [z for z in range(self.order) if np.array_equal(T[z], T[:, z])]

    def _default_minus(self):
        T = self.T
        twos = [z for z in self.center if z != self.unit and T[z, z] == self.unit]
        return twos[0] if len(twos) == 1 else None

    def _check_involution(self):
        T, s = self.T, self.involution
        k = self.order
        if sorted(s.tolist()) != list(range(k)) or not np.array_equal(s[s], np.arange(k)):
            raise InvolutionNotAntiAutomorphism("# is not an involutive permutation")
        x, y = np.indices((k, k))
        if not np.array_equal(s[T[x, y]], T[s[y], s[x]]):
            raise InvolutionNotAntiAutomorphism("(xy)# differs from y# x#")
        cs = set(self.center)
        if any(int(T[x, s[x]]) not in cs for x in range(k)):
            raise InvolutionNotAntiAutomorphism("x x# is not central")

    def is_commutative(self) -> bool:
        return len(self.center) == self.order

    def resolve(self, sym) -> int:
        """Element index for a label, 'e'/'1' (unit) or '-1' (distinguished minus).

        Plain integers are element indices.
        """
        if isinstance(sym, (int, np.integer)) and not isinstance(sym, bool):
            if not 0 <= sym < self.order:
                raise NonCentralParameter(f"index {sym} out of range")
            return int(sym)
        if sym in self.magma.index:
            return self.magma.index[sym]
        if str(sym) in ("e", "1"):
            return self.unit
        if str(sym) == "-1":
            if self.minus is None:
                raise NonCentralParameter(f"{self.label} has no distinguished -1; name an element")
            return self.minus
        raise NonCentralParameter(f"unknown element {sym!r} of {self.label}")


def _check_params(g: FiniteGroup, eps: int, mu: int):
    T, s = g.T, g.involution
    cs = set(g.center)
    for name, v in (("eps", eps), ("mu", mu)):
        if v not in cs:
            raise NonCentralParameter(f"{name} = {g.elements[v]} is not central")
        if s[v] != v:
            raise NonCentralParameter(f"{name} = {g.elements[v]} is not fixed by #")
    if T[eps, eps] != g.unit:
        raise NonCentralParameter(f"eps = {g.elements[eps]} does not square to the unit")


class DoubleLoop(FiniteMagma):
    """D(G) with its doubled involution; element i < |G| is x_0, else x_1."""

    def __init__(self, g: FiniteGroup, eps, mu, convention: str = "bullet"):
        if convention not in CONVENTIONS:
            raise ValueError(f"convention must be one of {CONVENTIONS}")
        e, m = g.resolve(eps), g.resolve(mu)
        _check_params(g, e, m)
        self.group, self.eps, self.mu, self.convention = g, e, m, convention
        k = g.order
        T, s = g.T, g.involution
        me = T[m, e]
        x, y = np.indices((k, k))
        t = np.empty((2 * k, 2 * k), dtype=np.int64)
        t[:k, :k] = T[x, y]
        if convention == "bullet":
            t[:k, k:] = T[y, x] + k
            t[k:, :k] = T[x, s[y]] + k
            t[k:, k:] = T[me, T[s[y], x]]
        else:
            t[:k, k:] = T[s[x], y] + k
            t[k:, :k] = T[y, x] + k
            t[k:, k:] = T[me, T[y, s[x]]]
        els = [DoubledElement(a, p) for p in (0, 1) for a in g.elements]
        prime = "'" if convention == "bullet-prime" else ""
        super().__init__(els, 2, table=t, label=f"D{prime}({g.label})")
        self.involution = np.concatenate([s, T[e] + k])

    def embed(self, i: int, parity: int = 0) -> int:
        return i + parity * self.group.order

    def as_group(self, label: str = "") -> FiniteGroup:
        """The double as the next stage: distinguished -1 is the image of the old one."""
        minus = None if self.group.minus is None else self.embed(self.group.minus)
        return FiniteGroup(self, involution=self.involution, label=label or self.label,
                           minus=minus)

    def parts(self, i: int) -> tuple:
        k = self.group.order
        return i % k, i // k


def moufang_double(g: FiniteGroup, eps="e", mu="e", convention: str = "bullet") -> DoubleLoop:
    """The double of g with parameters eps, mu (labels, 'e', '-1' or indices)."""
    return DoubleLoop(g, eps, mu, convention)


def dihedral_loop(g: FiniteGroup) -> DoubleLoop:
    _require_inverse(g)
    return DoubleLoop(g, "e", "e")


def dicyclic_loop(g: FiniteGroup, z="-1") -> DoubleLoop:
    _require_inverse(g)
    zi = g.resolve(z)
    if zi == g.unit or g.T[zi, zi] != g.unit:
        raise NonCentralParameter("z must have order 2")
    return DoubleLoop(g, zi, "e")


def _require_inverse(g: FiniteGroup):
    if not np.array_equal(g.involution, g.inverse):
        raise InvolutionNotAntiAutomorphism("this loop needs # = group inverse")


# -- ternary double ----------------------------------------------------------------

def ternary_double(g: FiniteGroup, eps="e", mu="e") -> FiniteMagma:
    """Ternary table on D(g) from closed forms per parity triple, old <xyz> = x y# z."""
    D = DoubleLoop(g, eps, mu)
    k = g.order
    T, s = g.T, g.involution
    e, m = D.eps, D.mu

    def t(x, y, z):
        return T[T[x, s[y]], z]

    def sc(c, v):
        return T[c, v]

    em = T[e, m]
    x, y, z = np.indices((k, k, k))
    rows = {
        (0, 0, 0): (t(x, y, z), 0),
        (0, 0, 1): (t(z, y, x), 1),
        (0, 1, 0): (sc(e, t(y, z, x)), 1),
        (1, 0, 0): (t(x, z, y), 1),
        (1, 1, 0): (sc(m, t(z, y, x)), 0),
        (1, 0, 1): (sc(em, t(y, z, x)), 0),
        (0, 1, 1): (sc(m, t(x, z, y)), 0),
        (1, 1, 1): (sc(m, t(x, y, z)), 1),
    }
    out = np.empty((2 * k,) * 3, dtype=np.int64)
    for (p, q, r), (vals, par) in rows.items():
        out[p * k:(p + 1) * k, q * k:(q + 1) * k, r * k:(r + 1) * k] = vals + par * k
    return FiniteMagma(D.elements, 3, table=out, label=f"ternary D({g.label})")


def ternary_direct(D: DoubleLoop) -> FiniteMagma:
    """a (b# c) for bullet, (a b#) c for bullet-prime, evaluated in the double."""
    T, s = D.materialize(), D.involution
    n = D.order
    a, b, c = np.indices((n, n, n))
    if D.convention == "bullet":
        t = T[a, T[s[b], c]]
    else:
        t = T[T[a, s[b]], c]
    return FiniteMagma(D.elements, 3, table=t, label=f"ternary {D.label}")


# -- doubling chains ----------------------------------------------------------------

@dataclass
class Stage:
    loop: FiniteMagma
    eps: object = None
    mu: object = None
    verdicts: dict = field(default_factory=dict)

    def summary(self) -> str:
        v = self.verdicts
        kind = ("group" if v["associative"] else
                "Moufang, non-associative" if v["moufang"] else "non-Moufang loop")
        comm = "commutative" if v["commutative"] else "non-commutative"
        prof = " ".join(f"{o}^{c}" for o, c in _counts(v["profile"]))
        return (f"{v['identified']}, {comm}, element orders {prof}: "
                f"{kind}, order {v['order']}")


def _counts(profile):
    out = []
    for o in profile:
        if out and out[-1][0] == o:
            out[-1][1] += 1
        else:
            out.append([o, 1])
    return out


def stage_verdicts(m: FiniteMagma) -> dict:
    from .catalog import identify
    return {
        "order": m.order,
        "commutative": bool(check_property(m, "commutative")),
        "associative": bool(check_property(m, "associative")),
        "moufang": bool(check_property(m, "moufang")),
        "profile": m.order_profile(),
        "identified": identify(m),
    }


def doubling_chain(seed: FiniteGroup, steps, convention: str = "bullet") -> list:
    """Stages seed, D(seed), D(D(seed)), ...; each step is (eps, mu) or None.

    None keeps eps as the image of the previous eps and sets mu = e.  Symbols
    '-1' and 'e' are resolved at each stage (the '-1' of a double is the image
    of the previous one).
    """
    stages = [Stage(seed.magma, verdicts=stage_verdicts(seed.magma))]
    g = seed
    prev_eps = None
    for n, step in enumerate(steps, start=1):
        if g is None:
            raise InvalidStageParameter(f"stage {n}: previous stage is not a group")
        if step is None:
            if prev_eps is None:
                raise InvalidStageParameter(f"stage {n}: parameters must be explicit")
            eps, mu = prev_eps, "e"
        else:
            eps, mu = step
        try:
            D = DoubleLoop(g, eps, mu, convention)
        except (NonCentralParameter, InvolutionNotAntiAutomorphism) as exc:
            raise InvalidStageParameter(f"stage {n}: {exc}") from None
        prev_eps = D.embed(D.eps)
        stages.append(Stage(D, g.elements[D.eps], g.elements[D.mu], stage_verdicts(D)))
        try:
            g = D.as_group()
        except NotInverseLoop:
            g = None
    return stages


def seed_group(name: str) -> FiniteGroup:
    """Named seeds c2, c3, c4, c6, c2xc2, q8 with # = inverse."""
    from . import catalog
    builders = {
        "c2": lambda: catalog.cyclic(2), "c3": lambda: catalog.cyclic(3),
        "c4": lambda: catalog.cyclic(4), "c6": lambda: catalog.cyclic(6),
        "c2xc2": lambda: catalog.direct_product(catalog.cyclic(2), catalog.cyclic(2), "C2xC2"),
        "q8": catalog.quaternion_group,
    }
    try:
        m = builders[name.lower()]()
    except KeyError:
        raise ValueError(f"unknown seed {name!r}; choose from {sorted(builders)}") from None
    return FiniteGroup(m)


# -- cross-checks -------------------------------------------------------------------

def binary_unit_loop(alg, box: int | None = None) -> FiniteMagma:
    """Unit sphere N = 1 of a binary algebra under its product (labels are vectors)."""
    from .quadratic import sphere_vectors
    from .errors import EmptySphere
    pts = sphere_vectors(alg.norm, 1, box)
    if not pts:
        raise EmptySphere("the unit sphere is empty")
    idx = {p: i for i, p in enumerate(pts)}
    X = np.array(pts, dtype=object)
    P = alg.mul_many(np.repeat(X, len(pts), 0), np.tile(X, (len(pts), 1)))
    R = alg.ring
    t = [idx[tuple(R(v) for v in row)] for row in np.asarray(P).tolist()]
    return FiniteMagma(pts, 2, table=np.array(t).reshape(len(pts), len(pts)),
                       label=f"unit sphere of {alg.label}")


def kd_sphere_matches_dicyclic(alg, kd_alg, box: int | None = None, side: str = "left") -> bool:
    """Unit sphere of kd_alg (doubling with parameter -1) equals the dicyclic
    loop of the base unit sphere under (x, 0) -> x_0, (0, x) -> x_1.

    The left doubling corresponds to ``bullet``, the right one to ``bullet-prime``.
    """
    base = binary_unit_loop(alg, box)
    top = binary_unit_loop(kd_alg, box)
    n = alg.rank
    zero = tuple(alg.ring(0) for _ in range(n))
    minus = tuple(alg.ring(-c) for c in alg.unit)
    g = FiniteGroup(base, involution=None, minus=base.index[minus])
    conv = {"left": "bullet", "right": "bullet-prime"}[side]
    _require_inverse(g)
    D = DoubleLoop(g, "-1", "e", conv)
    if top.order != D.order:
        return False
    k = base.order
    f = []
    for v in top.elements:
        v0, v1 = tuple(v[:n]), tuple(v[n:])
        f.append(base.index[v0] if v1 == zero else base.index[v1] + k)
    f = np.array(f)
    Tt, Td = top.materialize(), D.materialize()
    return bool(np.array_equal(f[Tt], Td[np.ix_(f, f)]))
