"""Small exact linear algebra helpers over a RingSpec.

Vectors are tuples, matrices are tuples of row tuples.  Everything here is
plain Python; the bulk paths elsewhere use numpy.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import RankMismatch
from .ring import RingSpec


def vec(R: RingSpec, x, rank: int | None = None) -> tuple:
    v = tuple(R(c) for c in x)
    if rank is not None and len(v) != rank:
        raise RankMismatch(f"expected a vector of length {rank}, got {len(v)}")
    return v


def vadd(R, x, y):
    _same(x, y)
    return tuple(R(a + b) for a, b in zip(x, y))


def vsub(R, x, y):
    _same(x, y)
    return tuple(R(a - b) for a, b in zip(x, y))


def vneg(R, x):
    return tuple(R(-a) for a in x)


def vscale(R, s, x):
    return tuple(R(s * a) for a in x)


def vcomb(R, *pairs):
    """Linear combination sum(s_i * x_i) of (scalar, vector) pairs."""
    n = len(pairs[0][1])
    out = [0] * n
    for s, x in pairs:
        _same(pairs[0][1], x)
        for i, a in enumerate(x):
            out[i] += s * a
    return tuple(R(c) for c in out)


def zero_vec(R, n):
    return (R.zero,) * n


def basis(R, n, i):
    return tuple(R.one if j == i else R.zero for j in range(n))


def _same(x, y):
    if len(x) != len(y):
        raise RankMismatch(f"length {len(x)} vs {len(y)}")


def mat(R, rows) -> tuple:
    return tuple(tuple(R(c) for c in row) for row in rows)


def mat_identity(R, n):
    return tuple(basis(R, n, i) for i in range(n))


def mat_mul(R, A, B):
    inner = len(B)
    return tuple(
        tuple(R(sum(A[i][k] * B[k][j] for k in range(inner))) for j in range(len(B[0])))
        for i in range(len(A)))


def mat_vec(R, A, x):
    return tuple(R(sum(a * b for a, b in zip(row, x))) for row in A)


def mat_add(R, A, B):
    return tuple(tuple(R(a + b) for a, b in zip(r, s)) for r, s in zip(A, B))


def mat_sub(R, A, B):
    return tuple(tuple(R(a - b) for a, b in zip(r, s)) for r, s in zip(A, B))


def mat_scale(R, s, A):
    return tuple(tuple(R(s * a) for a in row) for row in A)


def transpose(A):
    return tuple(zip(*A))


def columns_to_matrix(cols):
    """Matrix whose j-th column is cols[j]."""
    return tuple(zip(*cols))


# -- span membership ------------------------------------------------------

def _echelon_int(rows: list[list[int]]) -> list[list[int]]:
    """Row echelon form over the integers using gcd steps only."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    out = []
    for col in range(ncols):
        live = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        if not live:
            continue
        # Euclid on the column until a single nonzero entry remains
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            p = live[0]
            nxt = [p]
            for r in live[1:]:
                f = r[col] // p[col]
                r = [a - f * b for a, b in zip(r, p)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        out.append(live[0])
        rows = rest
    return out


def _reduce_int(echelon: list[list[int]], target: list[int]) -> list[int]:
    t = list(target)
    for row in echelon:
        col = next(i for i, a in enumerate(row) if a != 0)
        if t[col] % row[col] != 0:
            return t
        f = t[col] // row[col]
        t = [a - f * b for a, b in zip(t, row)]
    return t


def in_span(R: RingSpec, gens: Sequence[Sequence], target: Sequence) -> bool:
    """Exact test: is ``target`` a ring-linear combination of ``gens``?"""
    target = list(target)
    n = len(target)
    if R.kind == "rat":
        rows = [[Fraction(a) for a in g] for g in gens]
        t = [Fraction(a) for a in target]
        piv = []
        for col in range(n):
            pr = next((r for r in rows if r[col] != 0), None)
            if pr is None:
                continue
            rows.remove(pr)
            pr = [a / pr[col] for a in pr]
            rows = [[a - r[col] * b for a, b in zip(r, pr)] for r in rows]
            piv.append((col, pr))
        for col, pr in piv:
            if t[col] != 0:
                f = t[col]
                t = [a - f * b for a, b in zip(t, pr)]
        return not any(t)
    rows = [[int(a) for a in g] for g in gens]
    t = [int(a) for a in target]
    if R.kind == "zmod":
        m = R.modulus
        rows += [[m if j == i else 0 for j in range(n)] for i in range(n)]
    ech = _echelon_int(rows)
    return not any(_reduce_int(ech, t))
