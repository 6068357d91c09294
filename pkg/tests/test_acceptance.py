"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` and read the "acceptance criteria"
section of the summary, or ``pytest -s`` to see the lines inline.
"""
from itertools import product

import numpy as np
import pytest
import sympy

from reference_data import WRONG_ROWS, TABLE1, TABLE2
from sphere.binary2d import (adjugate, canonical_algebra, det, five_fold, form_space,
                             spiflection_S, spiration_R, table1, trace)
from sphere.catalog import octonion_loop
from sphere.constructions import (RightModuleAction, abcd_double, binarion, check_BA,
                                  clifford_quaternion, exterior_plane, kd_double,
                                  matrix_model_22, minkowski_extension, polarized_space,
                                  split_null_extension)
from sphere.linalg import mat_mul, mat_scale, mat_sub
from sphere.loops import (autotopy_check, check_property, hexad, ternary_from_inverse_loop)
from sphere.moufang_double import doubling_chain, moufang_double, seed_group, ternary_direct, \
    ternary_double
from sphere.quadratic import QuadraticSpace, jordan_Q, reflection, root_vectors, sphere_vectors
from sphere.ring import INTEGERS, zmod
from sphere.spherical import homotope, prep
from sphere.verify import Strategy, recheck, verify


def _triples(ring, count, seed):
    rng = np.random.default_rng(seed)
    if ring.is_finite:
        raw = rng.integers(0, ring.modulus, size=(count, 3))
    else:
        raw = rng.integers(-5, 6, size=(count, 3))
    return [tuple(int(v) for v in row) for row in raw]


def _five_fold_ok(form, ring):
    """All 32 basis 5-tuples agree across bracketings and match the frozen rows."""
    R = zmod(ring.modulus) if ring.is_finite else INTEGERS
    for idx in product((1, 2), repeat=5):
        vals = {five_fold(form, idx, br, ring) for br in ("left", "middle", "right")}
        if len(vals) != 1:
            return False
        if idx in TABLE2 and vals.pop() != tuple(R(c) for c in TABLE2[idx](*form)):
            return False
    return True


# 1 ---------------------------------------------------------------------------------

def test_criterion_01_binary_identity_suite(acceptance_line):
    ids = ("K", "PA", "COM", "TC")
    failures, runs = [], 0
    cases = [(zmod(p), _triples(zmod(p), 10, p)) for p in (3, 5, 7)]
    cases.append((INTEGERS, _triples(INTEGERS, 5, 0)))
    for ring, forms in cases:
        for form in forms:
            alg = canonical_algebra(form, ring)
            strategies = [Strategy("exhaustive")]
            if not ring.is_finite:
                strategies += [Strategy("exhaustive-module", box=3),
                               Strategy("sampled", count=1000, seed=0)]
            for ident in ids:
                for s in strategies:
                    runs += 1
                    if not verify(alg, ident, s):
                        failures.append((str(ring), form, ident, s.kind))
            runs += 1
            if not _five_fold_ok(form, ring):
                failures.append((str(ring), form, "five-fold"))
    ok = not failures
    acceptance_line(1, ok, f"K, PA, Com, TC on 35 forms over Z/3, Z/5, Z/7, Z: "
                           f"{runs} checks, {len(failures)} failures")
    assert ok, failures


# 2 ---------------------------------------------------------------------------------

def test_criterion_02_table_reproduction(acceptance_line):
    a, b, c = sympy.symbols("a b c")
    forms = [(2, 3, 5), (1, -1, 1), (-3, 7, 11), (13, 0, -2)]
    t1 = all(table1(f)[idx] == row(*f) for f in forms for idx, row in TABLE1.items())
    # five-fold rows against a symbolic evaluation in generic a, b, c
    B = sympy.Matrix([[a, b], [0, c]])
    E = [sympy.Matrix([1, 0]), sympy.Matrix([0, 1])]

    def t(x, y, z):
        bil = lambda u, v: (u.T * B * v)[0, 0]
        return bil(x, y) * z - bil(x, z) * y + bil(y, z) * x

    t2_sym = 0
    for idx, row in TABLE2.items():
        p, q, r, s, u = (E[i - 1] for i in idx)
        got = t(t(p, q, r), s, u)
        if all(sympy.expand(g - e) == 0 for g, e in zip(got, row(a, b, c))):
            t2_sym += 1
    t2_num = all(five_fold(f, idx) == row(*f) for f in forms for idx, row in TABLE2.items())
    # the wrong values for rows 11111 and 12111 contradict the Kirmse identity:
    # <e1 e1 <e1 e1 e1>> = q(e1) <e1 e1 e1> = a^2 e1
    wrong_off = [idx for idx, row in WRONG_ROWS.items()
                   if five_fold((2, 3, 5), idx) != row(2, 3, 5)]
    ok = t1 and t2_sym == 10 and t2_num and len(wrong_off) == 2
    acceptance_line(2, ok, "basis triples 8/8 rows exact; five-fold 10/10 rows equal the symbolic "
                           "evaluation (rows 11111 and 12111 use the values forced by the "
                           "Kirmse identity)")
    assert ok


# 3 ---------------------------------------------------------------------------------

OPERATOR_IDS = ("R-sum", "L-sum", "R-square", "L-square", "R-compose", "L-compose",
                "S-pair", "LR-commute", "S-triple", "R-rule", "qInverse-left",
                "qInverse-right")


def test_criterion_03_spiration_calculus(acceptance_line):
    R = zmod(3)
    bad, count = [], 0
    for form in product(range(3), repeat=3):
        sp = form_space(form, R)
        for x, y in product(R.vectors(2), repeat=2):
            count += 1
            Rxy, Sxy = spiration_R(sp, x, y), spiflection_S(sp, x, y)
            qq, bxy = R(sp.q(x) * sp.q(y)), sp.polarize(x, y)
            I = ((qq, 0), (0, qq))
            checks = [
                R(trace(Rxy)) == bxy, R(det(Rxy)) == qq,
                R(trace(Sxy)) == 0, R(det(Sxy)) == R(-qq),
                mat_mul(R, Rxy, Rxy) == mat_sub(R, mat_scale(R, bxy, Rxy), I),
                mat_mul(R, Sxy, Sxy) == I,
                adjugate(Rxy, R) == spiration_R(sp, y, x),
                adjugate(Sxy, R) == mat_scale(R, -1, Sxy),
            ]
            if not all(checks):
                bad.append((form, x, y))
    algs = [clifford_quaternion(f, "zmod:3") for f in [(1, 1, 2), (1, 0, 1), (2, 1, 1)]]
    algs += [canonical_algebra(f, "zmod:3") for f in [(1, 1, 2), (1, 0, 1), (0, 1, 0)]]
    for alg in algs:
        for ident in OPERATOR_IDS:
            count += 1
            if not verify(alg, ident):
                bad.append((alg.label, ident))
    ok = not bad
    acceptance_line(3, ok, f"2x2 calculus on all 27 forms x 81 pairs over Z/3 and "
                           f"{len(OPERATOR_IDS)} operator identities on 6 instances: "
                           f"{count} checks, {len(bad)} failures")
    assert ok, bad[:5]


# 4 ---------------------------------------------------------------------------------

def test_criterion_04_reflection_structures(acceptance_line):
    R = zmod(7)
    sp = QuadraticSpace.diagonal(R, [1, 1])
    units = [v for v in R.vectors(2) if sp.is_invertible_vector(v)]
    bad = 0
    for mode in ("s", "j", "sigma"):
        tab = {(x, y): reflection(sp, mode, x, y) for x in units for y in units}
        for x in units:
            bad += tab[x, x] != x
            for y in units:
                bad += tab[x, tab[x, y]] != y
                sxy = tab[x, y]
                for z in units:
                    bad += tab[x, tab[y, tab[x, z]]] != tab[sxy, z]
    allv = list(R.vectors(2))
    for x in units:
        for y in units:
            qxy = jordan_Q(sp, x, y)
            for z in allv:
                bad += jordan_Q(sp, x, jordan_Q(sp, y, jordan_Q(sp, x, z))) != jordan_Q(sp, qxy, z)
    ok = bad == 0
    acceptance_line(4, ok, f"(S1)-(S3) for s, j, sigma and Q_x Q_y Q_x = Q_(Q_x y) on "
                           f"{len(units)} invertible vectors of Z/7^2: {bad} failures")
    assert ok


# 5 ---------------------------------------------------------------------------------

def test_criterion_05_root_vectors(acceptance_line):
    sp = QuadraticSpace.binary(INTEGERS, 1, -1, 1)
    roots = set(root_vectors(sp, 2))
    sphere = set(sphere_vectors(sp, 1, box=2))
    hexagon = {(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)}
    ok = len(roots) == 12 and sphere == hexagon and hexagon <= roots
    acceptance_line(5, ok, f"{len(roots)} root vectors, {len(sphere)} unit vectors "
                           f"(the hexagon +-e1, +-e2, +-(e1+e2))")
    assert ok


# 6 ---------------------------------------------------------------------------------

def test_criterion_06_polarized_trichotomy(acceptance_line):
    rank1 = check_BA([[1]])
    sympl = check_BA([[0, 1], [-1, 0]])
    model = polarized_space([[0, 1], [-1, 0]]).same_product(matrix_model_22())
    ident = check_BA([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    ok = bool(rank1) and bool(sympl) and model and not ident and ident.witness is not None
    acceptance_line(6, ok, f"rank 1 holds, symplectic 2x2 holds and equals M(2,2), "
                           f"identity 3x3 fails at {ident.witness}")
    assert ok


# 7 ---------------------------------------------------------------------------------

def _group_instances():
    R = "zmod:3"
    base = canonical_algebra((1, 1, 2), R)
    return [canonical_algebra((1, 0, 1), R), base, canonical_algebra((1, 1, 1), R),
            minkowski_extension(R, 3, (1, 0, 0), (0, 1, 0)),
            clifford_quaternion((1, 1, 2), R),
            split_null_extension(base, RightModuleAction.adjoint(base)),
            polarized_space([[0, 1], [-1, 0]], R), exterior_plane(R)]


def test_criterion_07_binary_ternary_bijection(acceptance_line):
    bad, n_e = [], 0
    for alg in _group_instances():
        R = alg.ring
        assert all(verify(alg, i) for i in ("K", "PA", "TC")), alg.label
        for e in R.vectors(alg.rank):
            if not R.is_invertible(alg.q(e)):
                continue
            n_e += 1
            h = homotope(alg, e)
            good = (verify(h, "associative") and verify(h, "unit")
                    and verify(h, "scalar-norm") and verify(h, "anti-automorphism")
                    and verify(h, "involutive")
                    and h.to_ternary("right", scale=alg.q(e)).same_product(alg))
            if not good:
                bad.append((alg.label, e))
    ok = not bad
    acceptance_line(7, ok, f"8 group spherical instances over Z/3, {n_e} base points: "
                           f"homotopes associative with scalar involution, q(e) x y# z "
                           f"rebuilds the product; {len(bad)} failures")
    assert ok, bad[:5]


# 8 ---------------------------------------------------------------------------------

def test_criterion_08_split_null_extensions(acceptance_line):
    # homotope formulas of the Minkowski 3-space at e = (1, 1, 0)
    mink = minkowski_extension("int", 3, (1, 0, 0), (0, 1, 0))
    h = homotope(mink, (1, 1, 0))
    pts = list(INTEGERS.vectors(3, box=2))
    formulas = all(h.conj(x) == (x[1], x[0], -x[2]) for x in pts) and all(
        h.mul(x, z) == (x[0] * z[0], z[1] * x[1], x[0] * z[2] + z[1] * x[2])
        for x in pts[::7] for z in pts[::5])
    group_ok = True
    for ring in ("int", "zmod:5"):
        for base in (canonical_algebra((1, -1, 1), ring), canonical_algebra((2, 1, 3), ring)):
            ext = split_null_extension(base, RightModuleAction.adjoint(base))
            group_ok &= all(verify(ext, i) for i in ("K", "PA", "TC"))
    witnesses = []
    moufang_ok = True
    for ring in ("int", "zmod:5"):
        base = minkowski_extension(ring, 3, (1, 0, 0), (0, 1, 0))
        ext = split_null_extension(base, RightModuleAction.adjoint(base))
        mirror = split_null_extension(base.reversed(),
                                      RightModuleAction.adjoint(base.reversed())).reversed()
        moufang_ok &= all(verify(ext, i) for i in ("TC", "A1dual", "A2dual", "A3dual"))
        moufang_ok &= all(verify(mirror, i) for i in ("TC", "A1", "A2", "A3"))
        for alg in (ext, mirror):
            pa = verify(alg, "PA")
            moufang_ok &= (not pa) and recheck(alg, pa)
            witnesses.append(pa.witness)
    ok = formulas and group_ok and moufang_ok
    acceptance_line(8, ok, "homotope formulas exact; commutative-base extensions pass "
                           "K, PA, TC; non-commutative base: Loos identities and TC hold "
                           f"(duals for the extension, literal for its mirror), PA fails at "
                           f"{witnesses[0]}")
    assert ok


# 9 ---------------------------------------------------------------------------------

def _norm_split_ok(alg, base, mu, vectors):
    n = base.rank
    X = prep(alg.ring, vectors)
    lhs = alg.norm.q_many(X)
    rhs = alg.ring.reduce(base.norm.q_many(X[:, :n]) - mu * base.norm.q_many(X[:, n:]))
    return bool(np.array_equal(lhs, rhs))


def test_criterion_09_doubling_ladder(acceptance_line):
    R = zmod(5)
    mu = -1
    notes, ok = [], True
    for side in ("left", "right"):
        b = binarion((1, 0, 1), R)
        H = kd_double(b, mu, side)
        O = kd_double(H, mu, side)
        ok &= bool(verify(H, "associative")) and not verify(H, "commutative")
        # the Moufang identity has degree 2 in a and 1 in x, y: the basis sweep
        # decides it for all triples of the module, sphere included
        ok &= bool(verify(O, "moufang", "exhaustive-basis"))
        sphere = sphere_vectors(O.norm, 1)
        rng = np.random.default_rng(0)
        S = prep(R, sphere)
        pick = rng.integers(0, len(S), size=(3, 20000))
        A, Xs, Ys = S[pick[0]], S[pick[1]], S[pick[2]]
        m = O.mul_many
        ok &= bool(np.array_equal(m(m(A, Xs), m(Ys, A)), m(A, m(m(Xs, Ys), A))))
        T = O.to_ternary("right" if side == "left" else "left")
        loos = ("A1", "A2", "A3") if side == "left" else ("A1dual", "A2dual", "A3dual")
        ok &= all(verify(T, i, "exhaustive-basis") for i in loos)
        assoc = verify(O, "associative")
        ok &= (not assoc) and recheck(O, assoc)
        ok &= _norm_split_ok(H, b, mu, list(R.vectors(4)))
        ok &= _norm_split_ok(O, H, mu, list(R.vectors(8, box=1)))
        ok &= bool(verify(O, "composition"))
        notes.append(f"{side}: sphere {len(sphere)}, witness {assoc.witness[:1]}")
    for base in (canonical_algebra((1, 0, 1), R), minkowski_extension(R, 3, (1, 0, 0),
                                                                      (0, 1, 0))):
        ok &= abcd_double(base, 0, "left").same_product(
            split_null_extension(base, RightModuleAction.adjoint(base)))
    acceptance_line(9, ok, "Z/5 ladder, both sides: quaternions associative and "
                           "non-commutative; octonions Moufang (basis proof plus 20000 "
                           "sphere triples), Loos identities, non-associative; "
                           "N = N0 - mu N1; mu = 0 ABCD equals the split null extension")
    assert ok, notes


# 10 --------------------------------------------------------------------------------

def test_criterion_10_moufang_double_chains(acceptance_line):
    c2 = doubling_chain(seed_group("c2"), [("-1", "e"), None, None])
    sizes = [s.loop.order for s in c2]
    names = [s.verdicts["identified"] for s in c2]
    top = c2[-1].verdicts
    ok = (sizes == [2, 4, 8, 16] and names == ["C2", "C4", "Q8", "O16"]
          and top["moufang"] and not top["associative"])
    c3 = doubling_chain(seed_group("c3"), [("e", "e"), ("e", "e")])
    v3 = c3[-1].verdicts
    ok &= v3["order"] == 12 and v3["moufang"] and not v3["associative"]
    c6 = doubling_chain(seed_group("c6"), [("-1", "e"), None])
    v1, v2 = c6[1].verdicts, c6[2].verdicts
    ok &= v1["order"] == 12 and v1["identified"] == "Dic3" and v1["associative"]
    ok &= v2["order"] == 24 and v2["moufang"] and not v2["associative"]
    g = seed_group("c6")
    ternary_ok = np.array_equal(ternary_double(g, "-1", "e").materialize(),
                                ternary_direct(moufang_double(g, "-1", "e")).materialize())
    g2 = moufang_double(g, "-1", "e").as_group()
    ternary_ok &= np.array_equal(ternary_double(g2, "-1", "e").materialize(),
                                 ternary_direct(moufang_double(g2, "-1", "e")).materialize())
    ok &= bool(ternary_ok)
    acceptance_line(10, ok, f"C2 chain {sizes} = {names}; C3 chain reaches order 12 "
                            f"({v3['identified']}); C6 chain Dic3 then order 24 Moufang "
                            f"non-associative; closed-form ternary table equals a(b# c)")
    assert ok


# 11 --------------------------------------------------------------------------------

def test_criterion_11_loop_engine(acceptance_line):
    o = octonion_loop()
    ok = all(check_property(o, p) for p in ("inverse-loop", "flexible", "alternative",
                                             "moufang"))
    right = ternary_from_inverse_loop(o, "right")
    at2 = check_property(right, "AT2")
    ok &= not at2
    chosen = ["e1", "-e4", "e7"]
    ok &= all(autotopy_check(o, t) for a in chosen for t in hexad(o, a))
    ok &= bool(check_property(right, "MT1")) and bool(check_property(right, "MT2"))
    ok &= bool(check_property(right, "reflection-space"))
    acceptance_line(11, ok, f"O16 inverse loop, flexible, alternative, Moufang; AT2 fails "
                            f"at {at2.witness}; hexads at {', '.join(chosen)}; MT1, MT2 and "
                            f"reflection axioms for (xyx) hold on the right ternary table")
    assert ok


# 12 --------------------------------------------------------------------------------

@pytest.mark.slow
def test_criterion_12_q_analogs(acceptance_line):
    base = minkowski_extension("zmod:3", 3, (1, 0, 0), (0, 1, 0))
    alg = split_null_extension(base, RightModuleAction.adjoint(base))
    left_moufang = all(verify(alg, i) for i in ("K", "TC", "A1dual", "A2dual", "A3dual"))
    chasles = verify(alg, "qChasles-left")
    auto = verify(alg, "qAutotopy-left", "exhaustive-module")
    ok = left_moufang and bool(chasles) and bool(auto)
    acceptance_line(12, ok, f"rank-6 left Moufang instance over Z/3: qChasles-left "
                            f"({chasles.strategy}, {chasles.checked} tuples) and "
                            f"qAutotopy-left ({auto.strategy}, {auto.checked} tuples) hold")
    assert ok
