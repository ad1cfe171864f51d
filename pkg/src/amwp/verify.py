"""Randomized verification batteries shared by the CLI, tests and scripts."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import catalog
from .cubic import CubicForm, cubic_from_monomials, hessian_data, index_cone_contains
from .curvature import bisectional_at, conjecture_2_8_residual, curvature_at, hsc_at
from .exactalg import MPoly, PoleError
from .identities import lemma_3_5_verify, theorem_3_7_verify, TYPE_II_TRACE_CONSTANT
from .metric import amwp_metric, slice_curvature_formula, slice_curvature_numeric

SUITES = ("lemma2_9", "lemma3_5", "thm3_7", "conj2_8", "slice_formula", "bounds")
BOUND_TOL = 1e-9
SLICE_TOL = 1e-4


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    total: int = 0
    failures: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.passed == self.total and not self.failures

    def note_symbolic(self, ok: bool, case) -> None:
        # family checks with parameters are reported beside the n random cases
        self.info["symbolic"] = f"{case}: {'pass' if ok else 'FAIL'}"
        if not ok:
            self.failures.append(case)

    def record(self, ok: bool, case) -> None:
        self.total += 1
        if ok:
            self.passed += 1
        else:
            self.failures.append(case)


def cubic_exponents(r: int) -> list[tuple[int, ...]]:
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for k in range(left, -1, -1):
            rec(prefix + [k], left - k, slots - 1)

    rec([], 3, r)
    return out


def random_cubic(rng: random.Random, r: int = 3, lo: int = -9, hi: int = 9) -> CubicForm:
    """Monomial coefficients uniform in [lo, hi]; never the zero form."""
    while True:
        mons = {e: rng.randint(lo, hi) for e in cubic_exponents(r)}
        f = cubic_from_monomials(r, mons)
        if not f.is_zero():
            return f


def random_rational(rng: random.Random, lo: int, hi: int, den: int = 16) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_cone_point(rng: random.Random, f: CubicForm, lo: int = 1, hi: int = 5, den: int = 16,
                      tries: int = 1000) -> list[Fraction]:
    """Rational point of the positive orthant lying in the index cone of f."""
    for _ in range(tries):
        y = [random_rational(rng, lo, hi, den) for _ in range(f.r)]
        if any(v <= 0 for v in y):
            continue
        if index_cone_contains(f, y):
            return y
    raise ValueError("no index-cone point found in the sampled box")


def _cubic_with_cone_point(rng, r=3):
    while True:
        f = random_cubic(rng, r)
        box = [Fraction(rng.randint(-16, 16), 4) for _ in range(r)]
        if index_cone_contains(f, box):
            return f, box


def suite_lemma2_9(rng: random.Random, n: int) -> SuiteResult:
    """Closed-form curvature identity for the symbolic Weierstrass family and n random ternary cubics."""
    res = SuiteResult("lemma2_9")
    res.note_symbolic(conjecture_2_8_residual(catalog.weierstrass_symbolic(), 3).holds, "weierstrass(lam, mu)")
    for k in range(n):
        f = random_cubic(rng, 3)
        res.record(conjecture_2_8_residual(f).holds, f"random[{k}] {f}")
    return res


def suite_conj2_8(rng: random.Random, n: int) -> SuiteResult:
    """Same identity for r = 1, 2 (exact) and, informationally, at points for r = 4."""
    res = SuiteResult("conj2_8")
    y = MPoly.variables(1)[0]
    res.record(conjecture_2_8_residual(y ** 3).holds, "y1^3")
    for k in range(n):
        f = random_cubic(rng, 2)
        res.record(conjecture_2_8_residual(f).holds, f"r=2 random[{k}] {f}")
    # r = 4: residuals are reported, not asserted
    f4, y4 = _cubic_with_cone_point(rng, 4)
    rep = conjecture_2_8_residual(f4, points=[y4])
    res.info["r4_cubic"] = str(f4)
    res.info["r4_point"] = [str(v) for v in y4]
    res.info["r4_max_residual"] = rep.max_residual
    return res


def suite_lemma3_5(rng: random.Random, n: int) -> SuiteResult:
    res = SuiteResult("lemma3_5")
    res.note_symbolic(lemma_3_5_verify(catalog.weierstrass_symbolic(), 3).holds, "weierstrass(lam, mu)")
    for k in range(n):
        f = random_cubic(rng, 3)
        res.record(lemma_3_5_verify(f).holds, f"random[{k}] {f}")
    return res


def suite_thm3_7(rng: random.Random, n: int) -> SuiteResult:
    res = SuiteResult("thm3_7")
    constants = set()
    for k in range(n):
        while True:
            a, b, c = (random_rational(rng, -5, 5, 3) for _ in range(3))
            if b or c:
                break
        verdict, const = theorem_3_7_verify(a, b, c)
        constants.add(const)
        res.record(verdict.holds and const == TYPE_II_TRACE_CONSTANT, f"(a,b,c)=({a},{b},{c}) -> {const}")
    res.info["constants"] = sorted(str(c) for c in constants)
    return res


def suite_slice_formula(rng: random.Random, n: int, names=("STU", "V16_11158", "V12_11136")) -> SuiteResult:
    res = SuiteResult("slice_formula")
    worst = 0.0
    for name in names:
        f = catalog.get(name).cubic
        for k in range(n):
            y = random_cone_point(rng, f)
            if hessian_data(f).h.evaluate(y) == 0:
                continue
            exact = float(slice_curvature_formula(f, y))
            num = slice_curvature_numeric(f, y)
            err = abs(exact - num)
            worst = max(worst, err)
            res.record(err <= SLICE_TOL, f"{name} at {[str(v) for v in y]}: formula {exact} numeric {num}")
    res.info["max_abs_error"] = worst
    return res


@dataclass
class BoundStats:
    min_hsc: float = float("inf")
    min_scalar: float = float("inf")
    min_ricci: float = float("inf")
    min_bisectional: float = float("inf")


def sample_bounds(f: CubicForm, rng: random.Random, n: int, on_sample: Callable | None = None) -> BoundStats:
    """Curvature lower-bound statistics over n random (point, direction) samples."""
    m = amwp_metric(f)
    st = BoundStats()
    r = f.r
    for _ in range(n):
        y = random_cone_point(rng, f, den=64)
        try:
            pc = curvature_at(m, y)
        except PoleError:
            continue
        v = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(r)]
        w = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(r)]
        hsc = hsc_at(pc, v)
        bis = bisectional_at(pc, v, w)
        # Ricci curvature in direction v: Ric(v, vbar) / g(v, vbar)
        ric = sum(float(pc.ricci[i][j]) * v[i] * v[j].conjugate() for i in range(r) for j in range(r)).real
        gv = sum(float(pc.g[i][j]) * v[i] * v[j].conjugate() for i in range(r) for j in range(r)).real
        st.min_hsc = min(st.min_hsc, hsc)
        st.min_bisectional = min(st.min_bisectional, bis)
        st.min_ricci = min(st.min_ricci, ric / gv)
        st.min_scalar = min(st.min_scalar, float(pc.scalar))
        if on_sample is not None:
            on_sample(y, v, hsc, pc.scalar)
    return st


def suite_bounds(rng: random.Random, n: int, name: str = "STU") -> SuiteResult:
    res = SuiteResult("bounds")
    f = catalog.get(name).cubic
    r = f.r
    st = sample_bounds(f, rng, n)
    res.record(st.min_hsc >= -2 - BOUND_TOL, f"min holomorphic sectional curvature {st.min_hsc}")
    res.record(st.min_ricci >= -(r + 1) - BOUND_TOL, f"min Ricci curvature {st.min_ricci}")
    res.record(st.min_scalar >= -r * (r + 1) - BOUND_TOL, f"min scalar curvature {st.min_scalar}")
    res.info.update(samples=n, min_hsc=st.min_hsc, min_ricci=st.min_ricci, min_scalar=st.min_scalar,
                    min_bisectional=st.min_bisectional)
    return res


def run_suite(name: str, seed: int, n: int | None = None, catalog_name: str | None = None) -> SuiteResult:
    rng = random.Random(seed)
    defaults = {"lemma2_9": 25, "lemma3_5": 100, "thm3_7": 20, "conj2_8": 10, "slice_formula": 10, "bounds": 1000}
    n = defaults[name] if n is None else n
    if name == "lemma2_9":
        return suite_lemma2_9(rng, n)
    if name == "lemma3_5":
        return suite_lemma3_5(rng, n)
    if name == "thm3_7":
        return suite_thm3_7(rng, n)
    if name == "conj2_8":
        return suite_conj2_8(rng, n)
    if name == "slice_formula":
        return suite_slice_formula(rng, n, (catalog_name,) if catalog_name else ("STU", "V16_11158", "V12_11136"))
    if name == "bounds":
        return suite_bounds(rng, n, catalog_name or "STU")
    raise ValueError(f"unknown suite {name!r}")


__all__ = [
    "SUITES",
    "BoundStats",
    "SuiteResult",
    "random_cone_point",
    "random_cubic",
    "run_suite",
    "sample_bounds",
]
