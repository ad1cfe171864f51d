import random
from fractions import Fraction

import pytest

from amwp import catalog
from amwp.cubic import (
    S_NORMALIZATION,
    CubicError,
    CubicForm,
    calibrate_s_normalization,
    change_of_variables,
    cubic_from_intersection,
    cubic_from_json,
    cubic_from_monomials,
    cubic_to_json,
    hessian_data,
    index_cone_contains,
    inertia,
    s_invariant,
    s_invariant_raw,
)
from amwp.exactalg import MPoly, det
from amwp.verify import random_cubic


def test_monomials_to_tensor():
    f = catalog.STU
    assert f.coeffs == {(0, 0, 0): 8, (0, 0, 1): 2, (0, 0, 2): 4, (0, 1, 2): 1, (0, 2, 2): 2}
    assert cubic_from_monomials(3, {(1, 1, 1): 1}).coeffs == {(0, 1, 2): Fraction(1, 6)}
    assert cubic_from_monomials(3, {}).is_zero()


def test_non_cubic_monomial_rejected():
    with pytest.raises(CubicError):
        cubic_from_monomials(3, {(0, 0, 2): 9})


def test_intersection_numbers():
    f = cubic_from_intersection(3, {(1, 1, 1): 8, (1, 1, 2): 2, (1, 1, 3): 4, (1, 2, 3): 1, (1, 3, 3): 2})
    assert f == catalog.STU
    y1, y2, y3 = MPoly.variables(3)
    assert cubic_from_intersection(3, {(1, 2, 3): 1}).poly() == 6 * y1 * y2 * y3
    with pytest.raises(CubicError):
        cubic_from_intersection(3, [((1, 2, 3), 1), ((3, 2, 1), 2)])


def test_edl_basis_reproduces_stu():
    assert catalog.stu_from_edl() == catalog.STU
    assert catalog.stu_from_edl().a(0, 0, 0) == 8


def test_hessian_examples():
    y1, y2, y3 = MPoly.variables(3)
    assert hessian_data(y1 * y2 * y3, 3).H == 2 * y1 * y2 * y3
    hd = hessian_data(y1 ** 3 + y2 ** 3 + y3 ** 3, 3)
    assert hd.H == 216 * y1 * y2 * y3
    assert hd.h == y1 * y2 * y3
    H = hessian_data(catalog.V16_11158).H
    assert H.compose([y1, MPoly.zero(3), y3]).is_zero()


def test_s_invariant_examples():
    assert s_invariant(catalog.STU) == 1
    assert s_invariant(catalog.V16_11158) == 0
    rng = random.Random(3)
    for _ in range(5):
        a, b, c = (rng.randint(-5, 5) for _ in range(3))
        assert s_invariant(catalog.type2(a, b, c)) == 0


def test_s_normalization_is_pinned():
    assert S_NORMALIZATION == Fraction(1, 24)
    assert s_invariant_raw(catalog.STU) == 24
    assert calibrate_s_normalization(catalog.STU) == S_NORMALIZATION


def test_s_invariant_needs_three_variables():
    with pytest.raises(CubicError):
        s_invariant(cubic_from_monomials(2, {(3, 0): 1}))


def test_s_invariant_of_y1y2y3():
    # flat slice: -9/4 + S f^2 / (4 h^2) vanishes when f = y1y2y3 (h = f/108)
    f = cubic_from_monomials(3, {(1, 1, 1): 1})
    assert s_invariant(f) == Fraction(1, 1296)


def _random_unimodular(rng, r=3):
    while True:
        A = [[rng.randint(-2, 2) for _ in range(r)] for _ in range(r)]
        if abs(det([[Fraction(v) for v in row] for row in A])) == 1:
            return A


def test_s_invariant_under_unimodular_change():
    rng = random.Random(5)
    for _ in range(50):
        f = random_cubic(rng)
        A = _random_unimodular(rng)
        assert s_invariant(change_of_variables(f, A)) == s_invariant(f)


def test_s_invariant_scales_by_det4():
    rng = random.Random(6)
    for _ in range(10):
        f = random_cubic(rng)
        A = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        d = det([[Fraction(v) for v in row] for row in A])
        if d == 0:
            continue
        assert s_invariant(change_of_variables(f, A)) == d ** 4 * s_invariant(f)


def test_s_vanishes_on_split_cubics():
    rng = random.Random(7)
    for _ in range(20):
        g = {(0, 3, 0): rng.randint(-9, 9), (0, 2, 1): rng.randint(-9, 9),
             (0, 1, 2): rng.randint(-9, 9), (0, 0, 3): rng.randint(-9, 9)}
        assert s_invariant(cubic_from_monomials(3, {(3, 0, 0): 1, **g})) == 0


def test_h_is_H_over_216():
    rng = random.Random(8)
    for _ in range(10):
        hd = hessian_data(random_cubic(rng))
        assert hd.H == hd.h * 216


def test_index_cone_examples():
    y1y2y3 = cubic_from_monomials(3, {(1, 1, 1): 1})
    assert index_cone_contains(y1y2y3, [1, 1, 1])
    assert index_cone_contains(catalog.STU, [1, 1, 1])
    assert not index_cone_contains(catalog.STU, [0, 1, 1])  # f = 0
    assert inertia([[0, 1, 1], [1, 0, 1], [1, 1, 0]]) == (1, 2, 0)


def test_index_cone_is_a_cone():
    rng = random.Random(9)
    for _ in range(20):
        f = random_cubic(rng)
        y = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3)]
        lam = Fraction(rng.randint(1, 20), rng.randint(1, 20))
        assert index_cone_contains(f, y) == index_cone_contains(f, [lam * v for v in y])


def test_stu_normal_form():
    g = change_of_variables(catalog.STU, [[1, 0, 0], [0, 1, 0], [-1, 0, 1]])
    U, S, T = MPoly.variables(3)
    assert g.poly() * Fraction(1, 6) == S * T * U + T * T * U + U ** 3 * Fraction(1, 3)


def test_identity_change_and_hessian_transform():
    f = catalog.V16_11158
    assert change_of_variables(f, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == f
    A = [[2, 1, 0], [0, 1, 0], [1, 0, 3]]
    g = change_of_variables(f, A)
    d = det([[Fraction(v) for v in row] for row in A])
    y = MPoly.variables(3)
    Ay = [sum((y[j] * A[i][j] for j in range(3)), MPoly.zero(3)) for i in range(3)]
    assert hessian_data(g).H == hessian_data(f).H.compose(Ay) * d ** 2
    with pytest.raises(CubicError):
        change_of_variables(f, [[1, 1, 0], [1, 1, 0], [0, 0, 1]])


@pytest.mark.parametrize("mode", ["monomials", "intersection"])
def test_json_roundtrip(mode):
    f = catalog.V12_11136
    assert cubic_from_json(cubic_to_json(f, mode)) == f


def test_json_errors():
    with pytest.raises(CubicError):
        cubic_from_json({"r": 3, "mode": "weird", "terms": []})
    with pytest.raises(CubicError):
        cubic_from_json({"mode": "monomials"})
