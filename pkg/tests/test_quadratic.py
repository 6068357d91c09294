import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sphere.errors import InfeasibleStrategy, NotInvertible, RankMismatch, UnsupportedRing
from sphere.quadratic import (QuadraticSpace, jordan_D, jordan_Q, parse_form, reflection,
                              root_coefficient, root_vectors, sphere_vectors)
from sphere.ring import INTEGERS, RATIONALS, zmod
from sphere.verify import verify

EISENSTEIN = QuadraticSpace.binary(INTEGERS, 1, -1, 1)
HEXAGON = {(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)}
LONG_ROOTS = {(1, -1), (-1, 1), (2, 1), (-2, -1), (1, 2), (-1, -2)}


def test_binary_form_values():
    sp = QuadraticSpace.binary(INTEGERS, 2, 3, 5)
    assert sp.q((1, 0)) == 2
    assert sp.q((0, 1)) == 5
    assert sp.q((1, 1)) == 10
    assert sp.binary_coefficients == (2, 3, 5)
    assert sp.polarize((1, 0), (0, 1)) == 3
    assert sp.polarize((1, 0), (1, 0)) == 4


def test_non_symmetric_table_only_q_matters():
    a = QuadraticSpace(INTEGERS, [[1, 4], [0, 2]])
    b = QuadraticSpace(INTEGERS, [[1, 1], [3, 2]])
    for x in INTEGERS.vectors(2, box=2):
        assert a.q(x) == b.q(x)
        for y in [(1, 0), (0, 1), (2, -1)]:
            assert a.polarize(x, y) == b.polarize(x, y)


def test_rank_checks():
    with pytest.raises(RankMismatch):
        QuadraticSpace(INTEGERS, [[1, 2]])
    with pytest.raises(RankMismatch):
        QuadraticSpace.diagonal(INTEGERS, [1, 1, 1]).binary_coefficients


def test_parse_form_variants():
    assert parse_form("1,-1,1") == EISENSTEIN
    sp = parse_form("1/2,0,3", "rat")
    assert sp.q((1, 0)) == Fraction(1, 2)
    doc = json.dumps({"ring": "zmod:5", "b": [[1, 0], [0, 1]]})
    assert parse_form(doc).ring == zmod(5)


def test_json_round_trip():
    sp = QuadraticSpace.diagonal(RATIONALS, [Fraction(1, 3), -2, 5])
    assert QuadraticSpace.from_dict(json.loads(json.dumps(sp.to_dict()))) == sp


def test_direct_sum_and_scaling():
    a = QuadraticSpace.diagonal(INTEGERS, [1, 1])
    s = a.direct_sum(QuadraticSpace.diagonal(INTEGERS, [1]), scale=-3)
    assert s.rank == 3
    assert s.q((1, 2, 1)) == 1 + 4 - 3
    assert a.scaled(5).q((1, 1)) == 10


def test_root_vectors_hexagonal_form():
    roots = set(root_vectors(EISENSTEIN, 2))
    assert len(roots) == 12
    assert roots == HEXAGON | LONG_ROOTS
    assert set(sphere_vectors(EISENSTEIN, 1, box=2)) == HEXAGON
    assert root_coefficient(EISENSTEIN, (2, 1), (1, 0)) == 1
    with pytest.raises(NotInvertible):
        root_coefficient(QuadraticSpace.diagonal(INTEGERS, [2, 1]), (1, 1), (1, 0))


def test_root_vectors_need_integers():
    with pytest.raises(UnsupportedRing):
        root_vectors(QuadraticSpace.diagonal(zmod(5), [1, 1]), 1)


def test_sphere_vectors():
    sp = QuadraticSpace.diagonal(zmod(7), [1, 1])
    # x^2 + y^2 = c has p - (-1/p) = 8 solutions mod 7 for every c != 0
    for c in range(1, 7):
        assert len(sphere_vectors(sp, c)) == 8
    with pytest.raises(NotInvertible):
        sphere_vectors(sp, 0)
    with pytest.raises(InfeasibleStrategy):
        sphere_vectors(EISENSTEIN, 1)


def _map(sp, mode, x):
    return lambda y: reflection(sp, mode, x, y)


Z7 = QuadraticSpace.diagonal(zmod(7), [1, 1])
UNITS7 = [v for v in zmod(7).vectors(2) if Z7.is_invertible_vector(v)]
unit_vectors = st.sampled_from(UNITS7)


@pytest.mark.parametrize("mode", ["s", "j", "sigma"])
@given(x=unit_vectors, y=unit_vectors)
def test_reflection_axioms_sampled(mode, x, y):
    sx = _map(Z7, mode, x)
    assert sx(x) == x
    assert sx(sx(y)) == y
    sy = _map(Z7, mode, y)
    ssy = _map(Z7, mode, sx(y))
    for z in UNITS7[::5]:
        assert sx(sy(sx(z))) == ssy(z)


@given(x=unit_vectors, y=unit_vectors)
def test_sigma_is_s_after_j(x, y):
    assert reflection(Z7, "sigma", x, y) == reflection(Z7, "s", x, reflection(Z7, "j", x, y))


def test_reflection_bad_mode():
    with pytest.raises(ValueError):
        reflection(Z7, "t", (1, 0), (0, 1))


@given(st.tuples(*[st.integers(-4, 4)] * 3), st.tuples(*[st.integers(-4, 4)] * 3),
       st.tuples(*[st.integers(-4, 4)] * 3))
def test_jordan_D_is_polarized_Q(x, y, z):
    sp = QuadraticSpace(INTEGERS, [[1, 2, 0], [0, -3, 1], [0, 0, 2]])
    sum_q = jordan_Q(sp, tuple(a + b for a, b in zip(x, z)), y)
    rest = [a - b - c for a, b, c in zip(sum_q, jordan_Q(sp, x, y), jordan_Q(sp, z, y))]
    assert tuple(rest) == jordan_D(sp, x, z, y)


def test_fundamental_formula_identity():
    sp = QuadraticSpace(INTEGERS, [[1, 2, 0], [0, -3, 1], [0, 0, 2]])
    assert verify(sp, "FUFO")
