"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import random
import time
from fractions import Fraction

import numpy as np

from amwp import catalog
from amwp.cubic import cubic_from_monomials, hessian_data, index_cone_contains, s_invariant
from amwp.curvature import KAPPA, calibrate_kappa, scalar_curvature
from amwp.exactalg import MPoly
from amwp.identities import TYPE_II_TRACE_CONSTANT, blow_up_scan, parse_path
from amwp.metric import amwp_metric, riemann_tensor_numeric, sectional_curvature, slice_curvature_formula
from amwp.perturb import Prepotential, asymptotic_curvature_test, periodicity_test
from amwp.toric import edge_interior_points, face_interiority, lattice_points, polar_dual
from amwp.verify import random_cubic, run_suite


def report(n, ok, detail=""):
    print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def _signed_cone_point(rng, f):
    while True:
        y = [Fraction(rng.randint(-40, 40), 8) for _ in range(3)]
        if index_cone_contains(f, y):
            return y


def test_criterion_01_stu_detg():
    t0 = time.perf_counter()
    detg = amwp_metric(catalog.STU).detg
    dt = time.perf_counter() - t0
    report(1, detg == catalog.STU_PRINTED_DETG and dt < 10, f"exact match, {dt:.2f}s")


def test_criterion_02_stu_scalar():
    t0 = time.perf_counter()
    unit = scalar_curvature(amwp_metric(catalog.STU), kappa=1)
    kappa = calibrate_kappa(unit, catalog.STU_PRINTED_SCALAR)
    dt = time.perf_counter() - t0
    report(2, kappa == KAPPA == 1 and dt < 120, f"kappa={kappa}, {dt:.2f}s")


def test_criterion_03_s_invariants():
    rng = random.Random(303)
    y1 = MPoly.variables(3)[0]
    split_zero = True
    for _ in range(20):
        g = random_cubic(rng, 2)
        # g in (y2, y3) only, plus y1^3
        terms = {(0,) + e: c for e, c in g.poly().terms.items()}
        terms[(3, 0, 0)] = terms.get((3, 0, 0), 0) + 1
        split_zero &= s_invariant(cubic_from_monomials(3, terms)) == 0
    s_stu = s_invariant(catalog.STU)
    s_v16 = s_invariant(catalog.V16_11158)
    report(3, s_stu == 1 and s_v16 == 0 and split_zero, f"S(STU)={s_stu} S(V16)={s_v16} split={split_zero}")


def test_criterion_04_determinant_identity():
    t0 = time.perf_counter()
    res = run_suite("lemma3_5", seed=404, n=100)
    dt = time.perf_counter() - t0
    ok = res.ok and res.total == 100 and res.info["symbolic"].endswith("pass") and dt < 60
    report(4, ok, f"{res.passed}/{res.total} random, {res.info['symbolic']}, {dt:.2f}s")


def test_criterion_05_curvature_identity():
    t0 = time.perf_counter()
    r3 = run_suite("lemma2_9", seed=505, n=25)
    low = run_suite("conj2_8", seed=505, n=10)
    dt = time.perf_counter() - t0
    ok = r3.ok and r3.total == 25 and r3.info["symbolic"].endswith("pass") and low.ok and dt < 600
    report(5, ok, f"r=3 {r3.passed}/{r3.total} random, {r3.info['symbolic']}, r<=2 {low.passed}/{low.total}, "
                  f"r=4 residual {low.info['r4_max_residual']}, {dt:.2f}s")


def test_criterion_06_type_ii_constant():
    res = run_suite("thm3_7", seed=606, n=20)
    report(6, res.ok and res.info["constants"] == [str(TYPE_II_TRACE_CONSTANT)],
           f"{res.passed}/{res.total}, constants {res.info['constants']}")


def test_criterion_07_slice_curvature():
    res = run_suite("slice_formula", seed=707, n=10)
    rng = random.Random(707)
    exact, checked = True, 0
    for _ in range(10):
        a, b, c = (Fraction(rng.randint(1, 9), rng.randint(1, 3)) for _ in range(3))
        f = catalog.type2(a, b, c)
        y = _signed_cone_point(rng, f)
        if hessian_data(f).h.evaluate(y) != 0:
            checked += 1
            exact &= slice_curvature_formula(f, y) == Fraction(-9, 4)
    report(7, res.ok and res.total == 30 and exact and checked >= 5,
           f"{res.passed}/{res.total} within 1e-4 (max err {res.info['max_abs_error']:.2e}), type II exact at {checked} points={exact}")


def test_criterion_08_blow_up():
    stu = [row.scalar for row in blow_up_scan(catalog.STU, parse_path("s^2,s,s"), [10, 100, 1000])]
    rising = stu[0] < stu[1] < stu[2] and stu[2] > 0
    sc = scalar_curvature(amwp_metric(catalog.STU))
    s = MPoly.variables(1)[0]
    along = sc.compose([s, s * 2, s * 3])
    constant = along.num.is_constant() and along.den.is_constant()
    v16 = [row.scalar for row in blow_up_scan(catalog.V16_11158, parse_path("1,1/s,1"), [10, 100, 1000])]
    v16_rising = v16[0] < v16[1] < v16[2]
    report(8, rising and constant and v16_rising,
           f"STU {[float(v) for v in stu]}, (s,2s,3s) -> {along}, V16 {[float(v) for v in v16]}")


def test_criterion_09_bounds():
    res = run_suite("bounds", seed=909, n=1000)
    report(9, res.ok and res.info["samples"] == 1000,
           f"min HSC {res.info['min_hsc']:.6f}, min scalar {res.info['min_scalar']:.6f}")


def test_criterion_10_perturbation():
    stu = catalog.STU
    rows = asymptotic_curvature_test(Prepotential(stu, tail=(((1, 0, 0), 0.01),)), [0, 0, 0], [1, 1, 1], [1, 2],
                                     curvature=False)
    factor = rows[0].metric_deviation / rows[1].metric_deviation
    t = [complex(0.3, 1), complex(-0.2, 1), complex(0.1, 1)]
    real = periodicity_test(Prepotential(stu, bL=(1.0, -2.0, 0.5), tail=(((1, 0, 0), 0.01 + 0.01j),)), t,
                            [(1, 0, 0), (0, 1, 0), (0, 0, 1), (7, -3, 2)])
    imag = periodicity_test(Prepotential(stu, bL=(1j, 0, 0)), t, [(10 ** k, 0, 0) for k in (3, 4, 5, 6)])
    decays = all(a > b for a, b in zip(imag.max_entries, imag.max_entries[1:])) and imag.max_entries[-1] < 1e-4
    ok = factor >= 100 and real.max_deviation < 1e-12 and min(imag.deviations) > 1e-8 and decays
    report(10, ok, f"shrink factor {factor:.0f}, real max dev {real.max_deviation:.1e}, "
                   f"imaginary entries {[f'{v:.1e}' for v in imag.max_entries]}")


def test_criterion_11_toric():
    t0 = time.perf_counter()
    delta = catalog.DELTA_P11128
    polar = polar_dual(delta)
    dual_ok = polar == polar_dual(delta) and sorted(polar.verts) == sorted(catalog.DELTA_P11128_POLAR_VERTICES)
    pts = lattice_points(polar)
    listed = set(catalog.DELTA_P11128_POLAR_VERTICES) | set(catalog.DELTA_P11128_POLAR_EXTRA_POINTS.values()) | {(0,) * 4}
    face = face_interiority(polar, catalog.DELTA_P11128_POLAR_EXTRA_POINTS[6])
    edge = edge_interior_points(delta, 0, 1)
    dt = time.perf_counter() - t0
    ok = dual_ok and len(pts) == 11 and set(pts) == listed and face.support == (2, 3, 4) and face.codim == 2 \
        and edge == 0 and dt < 5
    report(11, ok, f"{len(pts)} points, v6 face {[k + 1 for k in face.support]} codim {face.codim}, "
                   f"edge points {edge}, {dt:.2f}s")


def test_criterion_12_radial_flatness():
    rng = random.Random(1212)
    y1, y2, y3 = MPoly.variables(3)
    worst = 0.0
    for f in (catalog.STU, y1 * y2 * y3):
        m = amwp_metric(f)
        for _ in range(5):
            y = [Fraction(rng.randint(8, 40), 16) for _ in range(3)]
            R, g = riemann_tensor_numeric(m, y)
            u = [float(v) for v in y]
            for _ in range(3):
                w = list(np.random.default_rng(rng.randint(0, 10 ** 6)).normal(size=3))
                worst = max(worst, abs(sectional_curvature(R, g, u, w)))
    report(12, worst <= 1e-6, f"max |K| on radial planes {worst:.2e}")
