"""Reference tables of small groups and Moufang loops, and isomorphism search.

Every entry is built from an independent closed formula (modular arithmetic,
Fano-plane signs, Chein's extension rules), never from the doubling code, so
that identifications of doubled loops are a genuine cross-check.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .loops import FiniteMagma, check_property


def cyclic(n: int) -> FiniteMagma:
    els = ["e"] + [f"g{i}" if i > 1 else "g" for i in range(1, n)]
    return FiniteMagma(els, 2, table=(np.add.outer(range(n), range(n)) % n), label=f"C{n}")


def direct_product(a: FiniteMagma, b: FiniteMagma, label: str = "") -> FiniteMagma:
    ka, kb = a.order, b.order
    els = [f"{x}.{y}" for x in a.elements for y in b.elements]
    Ta, Tb = a.materialize(), b.materialize()
    i, j = np.indices((ka * kb, ka * kb))
    t = Ta[i // kb, j // kb] * kb + Tb[i % kb, j % kb]
    return FiniteMagma(els, 2, table=t, label=label or f"{a.label}x{b.label}")


def dihedral(n: int) -> FiniteMagma:
    """Symmetries of the n-gon: r^i s^j with s r s = r^-1; order 2n."""
    els = [f"r{i}" for i in range(n)] + [f"s{i}" for i in range(n)]

    def mul(x, y):
        (i, a), (j, b) = x, y
        return ((i + (j if a == 0 else -j)) % n, a ^ b)

    keys = [(i, a) for a in (0, 1) for i in range(n)]
    pos = {k: p for p, k in enumerate(keys)}
    t = [[pos[mul(x, y)] for y in keys] for x in keys]
    return FiniteMagma(els, 2, table=t, label=f"D{n}")


def dicyclic(n: int) -> FiniteMagma:
    """<a, x | a^2n = e, x^2 = a^n, x a x^-1 = a^-1>; order 4n."""
    m = 2 * n
    keys = [(i, b) for b in (0, 1) for i in range(m)]
    els = [f"a{i}" for i in range(m)] + [f"a{i}x" for i in range(m)]

    def mul(u, v):
        (i, b), (j, c) = u, v
        if b == 0:
            return ((i + j) % m, c)
        if c == 0:
            return ((i - j) % m, 1)
        return ((i - j + n) % m, 0)

    pos = {k: p for p, k in enumerate(keys)}
    t = [[pos[mul(x, y)] for y in keys] for x in keys]
    return FiniteMagma(els, 2, table=t, label=f"Dic{n}")


def quaternion_group() -> FiniteMagma:
    units = ["1", "i", "j", "k"]
    rule = {("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j")}

    def unit_mul(a, b):
        if a == "1":
            return 1, b
        if b == "1":
            return 1, a
        if a == b:
            return -1, "1"
        if (a, b) in rule:
            return rule[(a, b)]
        s, c = rule[(b, a)]
        return -s, c

    els = [s + u for u in units for s in ("", "-")]

    def mul(x, y):
        sx, ux = (-1, x[1:]) if x.startswith("-") else (1, x)
        sy, uy = (-1, y[1:]) if y.startswith("-") else (1, y)
        s, u = unit_mul(ux, uy)
        return u if s * sx * sy == 1 else "-" + u

    return FiniteMagma.from_function(els, mul, label="Q8")


# Fano plane lines (i, i+1, i+3) mod 7, oriented so that e_i e_{i+1} = e_{i+3}.
FANO_LINES = tuple(tuple((i + d) % 7 + 1 for d in (0, 1, 3)) for i in range(7))


def _fano_rule():
    rule = {}
    for a, b, c in FANO_LINES:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            rule[(x, y)] = (1, z)
            rule[(y, x)] = (-1, z)
    return rule


def octonion_loop() -> FiniteMagma:
    """The 16 elements +-e0, ..., +-e7 of the Cayley octonions."""
    rule = _fano_rule()
    keys = [(s, i) for i in range(8) for s in (1, -1)]
    els = [("" if s == 1 else "-") + f"e{i}" for s, i in keys]

    def mul(x, y):
        (s, i), (t, j) = x, y
        if i == 0:
            return s * t, j
        if j == 0:
            return s * t, i
        if i == j:
            return -s * t, 0
        u, k = rule[(i, j)]
        return s * t * u, k

    pos = {k: p for p, k in enumerate(keys)}
    t = [[pos[mul(x, y)] for y in keys] for x in keys]
    return FiniteMagma(els, 2, table=t, label="O16")


def split_octonion_loop() -> FiniteMagma:
    """+-basis of the split octonions: Cayley-Dickson from Z three times with
    parameter +1, using the rule (a, b)(c, d) = (ac + d^# b, da + b c^#)."""
    dim = 1
    # basis products of the current algebra: mul[i][j] = (sign, k); conj sign per basis vector
    mul = [[(1, 0)]]
    conj = [1]
    for _ in range(3):
        new = [[None] * (2 * dim) for _ in range(2 * dim)]
        for i, j in product(range(2 * dim), repeat=2):
            a, hi_i = i % dim, i >= dim
            c, hi_j = j % dim, j >= dim
            if not hi_i and not hi_j:
                s, k = mul[a][c]
                new[i][j] = (s, k)
            elif not hi_i and hi_j:      # (a,0)(0,d) = (0, d a)
                s, k = mul[c][a]
                new[i][j] = (s, k + dim)
            elif hi_i and not hi_j:      # (0,b)(c,0) = (0, b c^#)
                s, k = mul[a][c]
                new[i][j] = (s * conj[c], k + dim)
            else:                        # (0,b)(0,d) = (d^# b, 0)
                s, k = mul[c][a]
                new[i][j] = (s * conj[c], k)
        conj = conj + [-1] * dim
        mul = new
        dim *= 2
    keys = [(s, i) for i in range(dim) for s in (1, -1)]
    els = [("" if s == 1 else "-") + f"u{i}" for s, i in keys]
    pos = {k: p for p, k in enumerate(keys)}
    t = [[pos[(s * t_ * mul[i][j][0], mul[i][j][1])] for t_, j in keys] for s, i in keys]
    return FiniteMagma(els, 2, table=t, label="split O16")


def chein_loop(g: FiniteMagma, label: str = "") -> FiniteMagma:
    """Chein's M(G, 2) on G u Gu: g(hu) = (hg)u, (gu)h = (gh^-1)u, (gu)(hu) = h^-1 g."""
    T = g.materialize()
    inv = g.inverse_map()
    k = g.order
    els = [str(x) for x in g.elements] + [f"{x}u" for x in g.elements]
    t = np.empty((2 * k, 2 * k), dtype=np.int64)
    for x, y in product(range(k), repeat=2):
        t[x, y] = T[x, y]
        t[x, y + k] = T[y, x] + k
        t[x + k, y] = T[x, inv[y]] + k
        t[x + k, y + k] = T[inv[y], x]
    return FiniteMagma(els, 2, table=t, label=label or f"M({g.label},2)")


# -- isomorphism -----------------------------------------------------------------

def _generators(m: FiniteMagma) -> list:
    """Greedy small generating set, preferring elements of large order."""
    T = m.materialize()
    order = sorted(range(m.order), key=lambda x: -m.element_order(x))
    gens, span = [], set()
    for x in order:
        if x in span:
            continue
        gens.append(x)
        span = _closure(T, gens)
        if len(span) == m.order:
            break
    return gens


def _closure(T, gens) -> set:
    span = set(gens)
    frontier = list(gens)
    while frontier:
        new = []
        cur = list(span)
        for x in frontier:
            for y in cur:
                for z in (T[x, y], T[y, x]):
                    z = int(z)
                    if z not in span:
                        span.add(z)
                        new.append(z)
        frontier = new
    return span


def _extend(Ta, Tb, gens, images):
    """Extend a generator assignment to a product-preserving map, or None."""
    f = dict(zip(gens, images))
    if len(set(f.values())) != len(f):
        return None
    frontier = list(gens)
    while frontier:
        new = []
        for x in frontier:
            for y in list(f):
                for u, v in ((x, y), (y, x)):
                    z, w = int(Ta[u, v]), int(Tb[f[u], f[v]])
                    if z in f:
                        if f[z] != w:
                            return None
                    else:
                        f[z] = w
                        new.append(z)
        frontier = new
    return f


def isomorphism(a: FiniteMagma, b: FiniteMagma):
    """An index map a -> b preserving the product, or None."""
    if a.arity != 2 or b.arity != 2 or a.order != b.order:
        return None
    try:
        if a.order_profile() != b.order_profile():
            return None
        ords_b = [b.element_order(y) for y in range(b.order)]
    except Exception:
        ords_b = None
    Ta, Tb = a.materialize(), b.materialize()
    gens = _generators(a)
    cands = []
    for x in gens:
        if ords_b is None:
            cands.append(range(b.order))
        else:
            ox = a.element_order(x)
            cands.append([y for y in range(b.order) if ords_b[y] == ox])
    for images in product(*cands):
        f = _extend(Ta, Tb, gens, images)
        if f is None or len(f) != a.order or len(set(f.values())) != a.order:
            continue
        perm = np.array([f[x] for x in range(a.order)])
        if np.array_equal(perm[Ta], Tb[np.ix_(perm, perm)]):
            return perm
    return None


def is_isomorphic(a: FiniteMagma, b: FiniteMagma) -> bool:
    return isomorphism(a, b) is not None


@lru_cache(maxsize=1)
def reference_loops() -> tuple:
    """Named loops used for identification, smallest first."""
    c2 = cyclic(2)
    out = [cyclic(n) for n in range(1, 17)]
    out += [direct_product(c2, c2, "C2xC2"), direct_product(cyclic(4), c2, "C4xC2"),
            direct_product(direct_product(c2, c2), c2, "C2xC2xC2"),
            direct_product(cyclic(3), cyclic(3), "C3xC3"),
            direct_product(cyclic(6), c2, "C6xC2"),
            direct_product(cyclic(4), cyclic(4), "C4xC4"),
            direct_product(direct_product(c2, c2), cyclic(4), "C2xC2xC4"),
            direct_product(direct_product(c2, c2), direct_product(c2, c2), "C2^4"),
            direct_product(quaternion_group(), c2, "Q8xC2"),
            direct_product(dihedral(4), c2, "D4xC2")]
    out += [dihedral(n) for n in range(3, 9)]
    out += [quaternion_group(), dicyclic(3), dicyclic(4),
            octonion_loop(), split_octonion_loop(), chein_loop(dihedral(3), "M(S3,2)")]
    return tuple(sorted(out, key=lambda m: m.order))


def identify(m: FiniteMagma) -> str:
    """Name of an isomorphic reference loop, or 'unidentified'."""
    if m.arity != 2 or not check_property(m, "loop"):
        return "unidentified"
    for ref in reference_loops():
        if ref.order == m.order and is_isomorphic(m, ref):
            return ref.label
    return "unidentified"
