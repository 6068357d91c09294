from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sphere.binary2d import canonical_algebra
from sphere.constructions import binarion, clifford_quaternion, minkowski_extension
from sphere.errors import InfeasibleStrategy, NotInvertible, RankMismatch
from sphere.quadratic import QuadraticSpace
from sphere.ring import INTEGERS, RATIONALS, zmod
from sphere.spherical import (TernaryAlgebra, homotope, inner_operator, sphere_enumerate,
                              torsor_product)
from sphere.verify import (IdentityId, Strategy, evaluate_identity, get_identity, recheck,
                           verify)

EIS = canonical_algebra((1, -1, 1))


def test_structure_constant_shape_checked():
    sp = QuadraticSpace.diagonal(INTEGERS, [1, 1])
    with pytest.raises(RankMismatch):
        TernaryAlgebra(sp, np.zeros((2, 2, 2), dtype=int))


@pytest.mark.parametrize("ring", ["int", "zmod:5", "rat"])
def test_json_round_trip_is_byte_stable(ring):
    alg = minkowski_extension(ring, 3, (1, 0, 0), (0, 1, 0))
    text = alg.to_json()
    back = TernaryAlgebra.from_json(text)
    assert back == alg
    assert back.to_json() == text


def test_rational_constants_survive_json():
    sp = QuadraticSpace.binary(RATIONALS, Fraction(1, 2), 0, 3)
    alg = canonical_algebra(sp)
    assert TernaryAlgebra.from_json(alg.to_json()) == alg


def test_reversed_product():
    alg = minkowski_extension("zmod:5", 3, (1, 0, 0), (0, 1, 0))
    rev = alg.reversed()
    for x, y, z in product(alg.space.basis(), repeat=3):
        assert rev.triple(x, y, z) == alg.triple(z, y, x)
    assert rev.reversed().same_product(alg)


def test_big_integer_products_are_exact():
    big = 10 ** 30
    alg = canonical_algebra((big, 1, big))
    x = (big, 1)
    assert alg.triple(x, x, (1, 0)) == (alg.q(x), 0)


def test_inner_operators():
    a, b = (1, 2), (0, 1)
    L = inner_operator(EIS, "L", a, b)
    Rm = inner_operator(EIS, "R", a, b)
    S = inner_operator(EIS, "S", a, b)
    for e, col in zip(EIS.space.basis(), range(2)):
        assert tuple(r[col] for r in L) == EIS.triple(a, b, e)
        assert tuple(r[col] for r in Rm) == EIS.triple(e, b, a)
        assert tuple(r[col] for r in S) == EIS.triple(a, e, b)
    with pytest.raises(ValueError):
        inner_operator(EIS, "X", a, b)


def test_homotope_of_commutative_circle():
    h = homotope(EIS, (1, 0))
    assert h.unit == (1, 0)
    for ident in ("unit", "associative", "commutative", "scalar-norm", "involutive",
                  "anti-automorphism", "composition"):
        assert verify(h, ident), ident
    with pytest.raises(NotInvertible):
        homotope(EIS, (2, 0))


HQ3 = clifford_quaternion((1, 1, 2), "zmod:3")
HQ3_UNITS = [v for v in zmod(3).vectors(4) if zmod(3).is_invertible(HQ3.q(v))]


@pytest.mark.parametrize("e", HQ3_UNITS[::9])
def test_homotope_rebuilds_structure_constants(e):
    alg = HQ3
    h = homotope(alg, e)
    assert verify(h, "associative")
    assert verify(h, "scalar-norm")
    assert h.to_ternary("left", scale=alg.q(e)).same_product(alg)


def test_torsor_product_on_sphere():
    sphere = sphere_enumerate(EIS, 1, box=1)
    assert len(sphere) == 6
    S = set(sphere)
    for x, y, z in product(sphere, repeat=3):
        assert torsor_product(EIS, x, y, z) in S
        assert torsor_product(EIS, x, x, y) == y


# -- verification engine --------------------------------------------------------

def test_registry_and_aliases():
    assert get_identity("AT2").name == "PA"
    assert get_identity("MT1").name == "A2"
    assert get_identity("MT2").name == "A3"
    assert get_identity(IdentityId.K).name == "K"
    with pytest.raises(KeyError):
        get_identity("nonsense")


def test_strategy_parsing():
    assert Strategy.parse(None).kind == "exhaustive"
    assert Strategy.parse("sampled").kind == "sampled"
    with pytest.raises(InfeasibleStrategy):
        Strategy.parse("random")
    assert Strategy("sampled", count=5, seed=2).describe() == "sampled(count=5,seed=2)"


def test_exhaustive_resolution():
    assert verify(EIS, "PA").strategy == "exhaustive-basis"
    q = clifford_quaternion((1, 1, 2), "zmod:3")
    assert verify(q, "qInverse-left").strategy.startswith("exhaustive-module")


def test_basis_strategy_rejects_cubic_slots():
    q = clifford_quaternion((1, 1, 2), "zmod:3")
    with pytest.raises(InfeasibleStrategy):
        verify(q, "qAutotopy-left", "exhaustive-basis")


def test_module_strategy_needs_box_over_integers():
    with pytest.raises(InfeasibleStrategy):
        verify(EIS, "K", "exhaustive-module")
    rep = verify(EIS, "K", Strategy("exhaustive-module", box=2))
    assert rep and rep.strategy == "exhaustive-module(box=2)"


def test_binary_identity_needs_binary_algebra():
    with pytest.raises(InfeasibleStrategy):
        verify(EIS, "associative")


def test_failure_witness_and_report_lines():
    alg = minkowski_extension("zmod:5", 3, (1, 0, 0), (0, 1, 0))
    split = alg  # para-associative, but not commutative
    rep = verify(split, "COM")
    assert not rep and rep.verdict == "fails"
    assert rep.variables == ("x", "y", "z")
    assert recheck(split, rep)
    assert any(c != 0 for c in evaluate_identity(split, "COM", *rep.witness))
    lines = rep.lines()
    assert lines[-1] == "RESULT COM fails exhaustive-basis"
    assert lines[1].startswith("  x = (")
    assert verify(split, "PA")


def test_sampled_reports_are_deterministic():
    alg = minkowski_extension("int", 3, (1, 0, 0), (0, 1, 0))
    s = Strategy("sampled", count=300, seed=11)
    a, b = verify(alg, "COM", s), verify(alg, "COM", s)
    assert a == b and not a
    assert verify(alg, "K", s).checked == 300


def test_form_level_identity():
    sp = QuadraticSpace.diagonal(zmod(5), [1, 2, 3])
    assert verify(sp, "FUFO")


@given(st.integers(0, 10_000))
def test_sampled_witnesses_are_real(seed):
    alg = minkowski_extension("zmod:7", 3, (1, 0, 1), (0, 1, 0))
    rep = verify(alg, "COM", Strategy("sampled", count=50, seed=seed))
    if not rep:
        assert recheck(alg, rep)


def test_binarion_is_commutative_composition_algebra():
    b = binarion((1, -1, 1), "int")
    for ident in ("unit", "associative", "commutative", "scalar-norm", "composition",
                  "cayley-hamilton", "central-trace"):
        assert verify(b, ident), ident
