import random
from fractions import Fraction

import pytest
import sympy

from amwp import catalog
from amwp.cubic import hessian_data
from amwp.curvature import scalar_curvature
from amwp.exactalg import MPoly, rational_inverse
from amwp.identities import (
    TYPE_II_TRACE_CONSTANT,
    blow_up_scan,
    c_tensor_slice,
    conjecture_last_term,
    lemma_3_5_verify,
    parse_path,
    scan_csv,
    theorem_3_7_verify,
    trace_term,
    type2_cubic,
)
from amwp.metric import amwp_metric
from amwp.verify import random_cubic


def test_determinant_identity_weierstrass_and_random():
    assert lemma_3_5_verify(catalog.weierstrass_symbolic(), 3).holds
    rng = random.Random(3)
    for _ in range(30):
        assert lemma_3_5_verify(random_cubic(rng)).holds


def test_determinant_identity_against_sympy():
    # independent oracle: sympy determinants of the same matrices
    ys = sympy.symbols("y1:4")
    expr = 8 * ys[0] ** 3 + 12 * ys[0] ** 2 * ys[2] + 6 * ys[0] ** 2 * ys[1] + 6 * ys[0] * ys[2] ** 2 + 6 * ys[0] * ys[1] * ys[2]
    grad = [sympy.diff(expr, v) for v in ys]
    G = sympy.Matrix(3, 3, lambda i, j: grad[i] * grad[j] - expr * sympy.diff(expr, ys[i], ys[j]))
    H = sympy.hessian(expr, ys).det()
    assert sympy.expand(G.det() - expr ** 3 * H / 2) == 0


def test_determinant_identity_needs_r3():
    y1, y2 = MPoly.variables(2)
    with pytest.raises(ValueError):
        lemma_3_5_verify(y1 ** 3 + y2 ** 3, 2)


def test_c_tensor_is_rank_one_psd():
    rng = random.Random(5)
    for _ in range(10):
        f = random_cubic(rng)
        for i in range(3):
            for j in range(3):
                C = c_tensor_slice(f, i, j)
                assert C.rank() <= 1
                assert C.is_psd()


def test_trace_term_equals_last_term_of_closed_form():
    # -(1/8) tr(B C)/(H f^3) is the same rational function as -g^{pq} f_ijp f_ijq / (64 f^2)
    for f in (catalog.STU, catalog.V16_11158, catalog.weierstrass(2, -3)):
        for i, j in ((0, 0), (0, 1), (1, 2)):
            assert trace_term(f, i, j) == conjecture_last_term(f, i, j)


def test_trace_term_diagonal_example():
    # y1 y2 y3: B and C are explicit, tr(B C(1,2)) is a monomial computation
    y1, y2, y3 = MPoly.variables(3)
    f = y1 * y2 * y3
    t = trace_term(f, 0, 1)
    H = hessian_data(f).H
    assert H == y1 * y2 * y3 * 2
    # f_{12q} is 1 for q = 3 and 0 otherwise, so the term is -g^{33} / (64 f^2)
    inv = rational_inverse(amwp_metric(f).at([1, 2, 3]))
    assert t.evaluate([Fraction(1), Fraction(2), Fraction(3)]) == -inv[2][2] / (64 * 36)


def test_type2_constant_is_universal():
    rng = random.Random(11)
    seen = set()
    for _ in range(20):
        while True:
            a, b, c = (Fraction(rng.randint(-15, 15), rng.randint(1, 4)) for _ in range(3))
            if b or c:
                break
        verdict, const = theorem_3_7_verify(a, b, c)
        assert verdict.holds, (a, b, c, verdict.detail)
        seen.add(const)
    assert seen == {TYPE_II_TRACE_CONSTANT}


def test_type2_constant_sympy_oracle():
    y1, y2, y3, a, b, c = sympy.symbols("y1 y2 y3 a b c")
    ys = (y1, y2, y3)
    f = y1 ** 3 + y2 * (a * y2 ** 2 + 3 * b * y2 * y3 + 3 * c * y3 ** 2)
    grad = [sympy.diff(f, v) for v in ys]
    G = sympy.Matrix(3, 3, lambda i, j: grad[i] * grad[j] - f * sympy.diff(f, ys[i], ys[j]))
    B = G.adjugate()
    vec = [sympy.diff(f, y1, y1, v) for v in ys]
    tr = sum(B[p, q] * vec[p] * vec[q] for p in range(3) for q in range(3))
    quad = (b ** 2 - a * c) * y2 ** 2 + b * c * y2 * y3 + c ** 2 * y3 ** 2
    q = sympy.cancel(tr / (quad * (f - 3 * y1 ** 3) * f))
    assert q == TYPE_II_TRACE_CONSTANT


def test_type2_degenerate_parameters_rejected():
    with pytest.raises(ValueError):
        theorem_3_7_verify(1, 0, 0)


def test_type2_cubic_shape():
    y1, y2, y3 = MPoly.variables(3)
    assert type2_cubic(1, 2, 3) == y1 ** 3 + y2 ** 3 + y2 * y2 * y3 * 6 + y2 * y3 * y3 * 9


def test_stu_blow_up_along_quadratic_ray():
    rows = blow_up_scan(catalog.STU, parse_path("s^2,s,s"), [10, 100, 1000])
    vals = [row.scalar for row in rows]
    assert all(row.in_cone for row in rows)
    assert vals[0] < vals[1] < vals[2]
    assert vals[2] > 0


def test_stu_scalar_constant_on_linear_ray():
    # exact: substitute y = s (1, 2, 3) symbolically in the scalar curvature
    sc = scalar_curvature(amwp_metric(catalog.STU))
    s = MPoly.variables(1)[0]
    restricted = sc.compose([s, s * 2, s * 3])
    assert restricted.num.is_constant() and restricted.den.is_constant()


def test_v16_blow_up_toward_type_ii_face():
    rows = blow_up_scan(catalog.V16_11158, parse_path("1,1/s,1"), [10, 100, 1000])
    vals = [row.scalar for row in rows]
    assert all(row.in_cone for row in rows)
    assert vals[0] < vals[1] < vals[2]


def test_path_parser():
    p = parse_path("s^2, 1/s, 3")
    assert p(Fraction(2)) == [4, Fraction(1, 2), 3]
    for bad in ("s.real", "__import__('os')", "t", "1.5"):
        with pytest.raises(ValueError):
            parse_path(bad)


def test_scan_csv_columns():
    rows = blow_up_scan(catalog.STU, parse_path("s,2*s,3*s"), [1, -1])
    text = scan_csv(rows, ["cubic STU"])
    lines = text.splitlines()
    assert lines[0] == "# cubic STU"
    assert lines[1] == "s,y1,y2,y3,f,scalar,s_float,scalar_float,in_cone"
    assert lines[2].endswith(",1")
    # s = -1 leaves the index cone: scalar left blank
    assert lines[3].split(",")[5] == "" and lines[3].endswith(",0")
