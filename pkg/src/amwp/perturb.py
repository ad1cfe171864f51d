"""Prepotentials with lower-order and quantum terms; numeric Kahler geometry.

F(t) = f(t)/6 + sum a_lm t_l t_m + sum b_k t_k + c + h(q),  q_j = exp(2 pi i t_j),

with Kahler potential K = -log L(t) where

    L = i ( sum_j (t_j - tbar_j)(d_j F + conj(d_j F)) + 2 conj(F) - 2 F )
      = 4 Im F - 4 sum_j y_j Re d_j F.

All numerics run in mpmath so that fourth-order finite differences of K stay
far above round-off.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import mpmath

from . import numdiff
from .cubic import CubicForm, cubic_from_json, cubic_to_json
from .curvature import curvature_at
from .metric import MetricField, amwp_metric

DEFAULT_DPS = 30
DEFAULT_STEP = 1e-3
MAX_TAIL_DEGREE = 8


class DomainError(ValueError):
    """The log argument of the Kahler potential is not positive."""


@dataclass(frozen=True)
class Prepotential:
    f: CubicForm
    aQ: tuple = ()
    bL: tuple = ()
    c0: complex = 0j
    tail: tuple = ()

    def __post_init__(self):
        r = self.f.r
        aQ = self.aQ or tuple(tuple(0j for _ in range(r)) for _ in range(r))
        bL = self.bL or tuple(0j for _ in range(r))
        aQ = tuple(tuple(complex(v) for v in row) for row in aQ)
        bL = tuple(complex(v) for v in bL)
        if len(aQ) != r or any(len(row) != r for row in aQ):
            raise ValueError(f"quadratic coefficients must be {r}x{r}")
        if any(aQ[i][j] != aQ[j][i] for i in range(r) for j in range(r)):
            raise ValueError("quadratic coefficients must be symmetric")
        if len(bL) != r:
            raise ValueError(f"linear coefficients must have length {r}")
        tail = []
        for m, coef in self.tail:
            m = tuple(int(k) for k in m)
            if len(m) != r or any(k < 0 for k in m):
                raise ValueError(f"bad tail exponent {m}")
            if sum(m) == 0:
                raise ValueError("tail terms must vanish at q = 0")
            if sum(m) > MAX_TAIL_DEGREE:
                raise ValueError(f"tail exponent {m} exceeds total degree {MAX_TAIL_DEGREE}")
            tail.append((m, complex(coef)))
        object.__setattr__(self, "aQ", aQ)
        object.__setattr__(self, "bL", bL)
        object.__setattr__(self, "c0", complex(self.c0))
        object.__setattr__(self, "tail", tuple(tail))

    @property
    def r(self) -> int:
        return self.f.r

    def is_real(self) -> bool:
        """Real quadratic and linear coefficients (the periodic case)."""
        return all(v.imag == 0 for row in self.aQ for v in row) and all(v.imag == 0 for v in self.bL)


def _pair(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValueError(f"complex number must be [re, im], got {v}")
        return complex(float(v[0]), float(v[1]))
    return complex(float(v))


def prepotential_from_json(obj: Mapping) -> Prepotential:
    f = cubic_from_json(obj["cubic"])
    aQ = tuple(tuple(_pair(v) for v in row) for row in obj.get("quadratic", ())) or ()
    bL = tuple(_pair(v) for v in obj.get("linear", ())) or ()
    c0 = _pair(obj.get("constant", [0, 0]))
    tail = tuple((tuple(t["m"]), _pair(t["c"])) for t in obj.get("tail", ()))
    return Prepotential(f, aQ, bL, c0, tail)


def prepotential_to_json(P: Prepotential) -> dict:
    def pair(z):
        return [z.real, z.imag]

    return {
        "cubic": cubic_to_json(P.f),
        "quadratic": [[pair(v) for v in row] for row in P.aQ],
        "linear": [pair(v) for v in P.bL],
        "constant": pair(P.c0),
        "tail": [{"m": list(m), "c": pair(c)} for m, c in P.tail],
    }


def load_prepotential(path) -> Prepotential:
    with open(path, encoding="utf-8") as fh:
        return prepotential_from_json(json.load(fh))


# -- evaluation --------------------------------------------------------------

class _Evaluator:
    """F, grad F and the tail pieces at complex points, in mpmath."""

    def __init__(self, P: Prepotential):
        self.P = P
        r = P.r
        p = P.f.poly()
        self.cubic = [(mpmath.mpf(c.numerator) / c.denominator if hasattr(c, "denominator") else mpmath.mpf(c), e)
                      for e, c in p.terms.items()]
        self.aQ = [[mpmath.mpc(v) for v in row] for row in P.aQ]
        self.bL = [mpmath.mpc(v) for v in P.bL]
        self.c0 = mpmath.mpc(P.c0)
        self.tail = [(m, mpmath.mpc(c)) for m, c in P.tail]
        self.r = r

    def _mono(self, t, e):
        v = mpmath.mpc(1)
        for ti, k in zip(t, e):
            if k:
                v *= ti ** k
        return v

    def F_and_grad(self, t):
        r = self.r
        F = mpmath.mpc(0)
        grad = [mpmath.mpc(0)] * r
        for coef, e in self.cubic:
            F += coef * self._mono(t, e) / 6
            for j in range(r):
                if e[j]:
                    e2 = list(e)
                    e2[j] -= 1
                    grad[j] += coef * e[j] * self._mono(t, e2) / 6
        for l in range(r):
            for m in range(r):
                a = self.aQ[l][m]
                if a:
                    F += a * t[l] * t[m]
                    grad[l] += a * t[m]
                    grad[m] += a * t[l]
        for k in range(r):
            F += self.bL[k] * t[k]
            grad[k] += self.bL[k]
        F += self.c0
        h, qdh = self.tail_values(t)
        F += h
        for j in range(r):
            # d h / d t_j = 2 pi i q_j dh/dq_j
            grad[j] += 2j * mpmath.pi * qdh[j]
        return F, grad

    def tail_values(self, t):
        """h(q) and q_j dh/dq_j."""
        r = self.r
        q = [mpmath.exp(2j * mpmath.pi * tj) for tj in t]
        h = mpmath.mpc(0)
        qdh = [mpmath.mpc(0)] * r
        for m, c in self.tail:
            term = c * self._mono(q, m)
            h += term
            for j in range(r):
                if m[j]:
                    qdh[j] += m[j] * term
        return h, qdh

    def log_argument(self, t):
        F, grad = self.F_and_grad(t)
        total = 2 * mpmath.conj(F) - 2 * F
        for j in range(self.r):
            total += (t[j] - mpmath.conj(t[j])) * (grad[j] + mpmath.conj(grad[j]))
        return 1j * total

    def reduced_argument(self, t):
        r = self.r
        x = [mpmath.re(v) for v in t]
        y = [mpmath.im(v) for v in t]
        fy = sum(coef * self._mono(y, e) for coef, e in self.cubic)
        val = 8 * fy / 6
        for l in range(r):
            for m in range(r):
                val += 4 * mpmath.im(self.aQ[l][m]) * (x[l] * x[m] + y[l] * y[m])
        for k in range(r):
            val += 4 * mpmath.im(self.bL[k]) * x[k]
        val += 4 * mpmath.im(self.c0)
        h, qdh = self.tail_values(t)
        H = sum(4 * mpmath.pi * y[j] * (mpmath.conj(qdh[j]) - qdh[j]) for j in range(r)) + 2 * (mpmath.conj(h) - h)
        # H is purely imaginary; the potential sees i*H
        return val + 1j * H


def _as_mp_point(t) -> list:
    return [mpmath.mpc(complex(v)) if not isinstance(v, mpmath.mpc) else v for v in t]


def _checked_log(arg) -> mpmath.mpf:
    re = mpmath.re(arg)
    if re <= 0:
        raise DomainError(f"log argument {mpmath.nstr(re, 8)} is not positive")
    return -mpmath.log(re)


def log_argument(P: Prepotential, t: Sequence[complex], dps: int = DEFAULT_DPS):
    """The (real) argument of the logarithm in K, from the defining formula."""
    with mpmath.workdps(dps):
        return mpmath.re(_Evaluator(P).log_argument(_as_mp_point(t)))


def kahler_potential(P: Prepotential, t: Sequence[complex], dps: int = DEFAULT_DPS) -> float:
    with mpmath.workdps(dps):
        return float(_checked_log(_Evaluator(P).log_argument(_as_mp_point(t))))


def lemma_2_3_reduced(P: Prepotential, t: Sequence[complex], dps: int = DEFAULT_DPS) -> float:
    """K from the closed-form reduction in terms of f(y), Im of the coefficients and the tail."""
    with mpmath.workdps(dps):
        return float(_checked_log(_Evaluator(P).reduced_argument(_as_mp_point(t))))


# -- numeric metric and curvature -------------------------------------------

@dataclass
class _Jet:
    """Real partial derivatives of K at one point, in coordinates (x_1..x_r, y_1..y_r)."""

    P: Prepotential
    t: list
    step: float
    levels: int
    dps: int
    cache: dict = field(default_factory=dict)
    memo: dict = field(default_factory=dict)

    def __post_init__(self):
        self.ev = _Evaluator(self.P)
        self.base = [mpmath.re(v) for v in self.t] + [mpmath.im(v) for v in self.t]
        self.h = mpmath.mpf(self.step)

    def _K(self, z):
        r = self.P.r
        t = [mpmath.mpc(z[j], z[r + j]) for j in range(r)]
        return [_checked_log(self.ev.log_argument(t))]

    def d(self, idx: tuple) -> mpmath.mpf:
        key = tuple(sorted(idx))
        if key not in self.memo:
            with mpmath.workdps(self.dps):
                self.memo[key] = numdiff.partial(self._K, self.base, key, self.h, self.levels, self.cache)[0]
        return self.memo[key]

    def wirtinger(self, slots: Sequence[tuple[int, bool]]):
        """d/dt or d/dtbar in each slot: (index, conjugated)."""
        r = self.P.r
        total = mpmath.mpc(0)
        n = len(slots)
        for mask in range(1 << n):
            weight = mpmath.mpc(1)
            idx = []
            for s, (j, conj) in enumerate(slots):
                if mask >> s & 1:
                    idx.append(r + j)
                    weight *= 1j if conj else -1j
                else:
                    idx.append(j)
            total += weight * self.d(tuple(idx))
        return total / 2 ** n


def _jet(P, t, step, levels, dps) -> _Jet:
    with mpmath.workdps(dps):
        return _Jet(P, _as_mp_point(t), step, levels, dps)


def metric_numeric(P: Prepotential, t: Sequence[complex], step: float = DEFAULT_STEP, levels: int = 2,
                   dps: int = DEFAULT_DPS) -> list[list[complex]]:
    """g_{i jbar} = d^2 K / dt_i dtbar_j by Richardson central differences; Hermitian-symmetrized."""
    jet = _jet(P, t, step, levels, dps)
    return _metric_from_jet(jet)


def _metric_from_jet(jet: _Jet) -> list[list[complex]]:
    r = jet.P.r
    with mpmath.workdps(jet.dps):
        g = [[jet.wirtinger([(i, False), (j, True)]) for j in range(r)] for i in range(r)]
        return [[complex((g[i][j] + mpmath.conj(g[j][i])) / 2) for j in range(r)] for i in range(r)]


def curvature_numeric(P: Prepotential, t: Sequence[complex], step: float = DEFAULT_STEP, levels: int = 2,
                      dps: int = DEFAULT_DPS) -> list:
    """R_{i jbar k lbar} = d_k d_lbar g_{i jbar} - sum g^{ebar d} d_k g_{i ebar} d_lbar g_{d jbar}."""
    jet = _jet(P, t, step, levels, dps)
    r = P.r
    with mpmath.workdps(dps):
        g = mpmath.matrix([[jet.wirtinger([(i, False), (j, True)]) for j in range(r)] for i in range(r)])
        ginv = g ** -1
        dk = {}  # d_k g_{i ebar}
        dl = {}  # d_lbar g_{d jbar}
        for k in range(r):
            dk[k] = mpmath.matrix([[jet.wirtinger([(i, False), (e, True), (k, False)]) for e in range(r)] for i in range(r)])
            dl[k] = mpmath.matrix([[jet.wirtinger([(d, False), (j, True), (k, True)]) for j in range(r)] for d in range(r)])
        R = [[[[None] * r for _ in range(r)] for _ in range(r)] for _ in range(r)]
        for k in range(r):
            for l in range(r):
                quad = dk[k] * ginv * dl[l]
                for i in range(r):
                    for j in range(r):
                        v = jet.wirtinger([(i, False), (j, True), (k, False), (l, True)]) - quad[i, j]
                        R[i][j][k][l] = complex(v)
        return R


def _exact_metric(m: MetricField, t) -> list[list[float]]:
    y = [Fraction(complex(v).imag) for v in t]
    return [[float(v) for v in row] for row in m.at(y)]


def metric_deviation(P: Prepotential, t, m: MetricField | None = None, **kw) -> float:
    """max |g_numeric - g_AMWP| over entries."""
    m = amwp_metric(P.f) if m is None else m
    gn = metric_numeric(P, t, **kw)
    ge = _exact_metric(m, t)
    r = P.r
    return max(abs(gn[i][j] - ge[i][j]) for i in range(r) for j in range(r))


@dataclass(frozen=True)
class PeriodicityReport:
    shifts: tuple
    deviations: tuple
    max_entries: tuple
    base_max_entry: float

    @property
    def max_deviation(self) -> float:
        return max(self.deviations) if self.deviations else 0.0


def periodicity_test(P: Prepotential, t: Sequence[complex], shifts: Sequence[Sequence[int]], **kw) -> PeriodicityReport:
    """max |g(t + n) - g(t)| for each integer shift n of the real parts."""
    r = P.r
    g0 = metric_numeric(P, t, **kw)
    devs, sizes = [], []
    for n in shifts:
        if len(n) != r or any(int(v) != v for v in n):
            raise ValueError(f"shift {n} must be an integer vector of length {r}")
        tn = [complex(t[j]) + int(n[j]) for j in range(r)]
        g = metric_numeric(P, tn, **kw)
        devs.append(max(abs(g[i][j] - g0[i][j]) for i in range(r) for j in range(r)))
        sizes.append(max(abs(g[i][j]) for i in range(r) for j in range(r)))
    base = max(abs(g0[i][j]) for i in range(r) for j in range(r))
    return PeriodicityReport(tuple(tuple(n) for n in shifts), tuple(devs), tuple(sizes), base)


@dataclass(frozen=True)
class AsymptoticRow:
    s: float
    metric_deviation: float
    curvature_deviation: float | None


def asymptotic_curvature_test(P: Prepotential, x0: Sequence[float], y0: Sequence[float], scales: Sequence[float],
                              curvature: bool = True, **kw) -> list[AsymptoticRow]:
    """Deviation of numeric metric (and curvature) from the exact AMWP values at t = x0 + i s y0."""
    m = amwp_metric(P.f)
    rows = []
    r = P.r
    for s in scales:
        t = [complex(x0[j], s * y0[j]) for j in range(r)]
        mdev = metric_deviation(P, t, m, **kw)
        cdev = None
        if curvature:
            Rn = curvature_numeric(P, t, **kw)
            Re = curvature_at(m, [Fraction(t[j].imag) for j in range(r)]).R
            cdev = max(abs(Rn[i][j][k][l] - float(Re[i][j][k][l]))
                       for i in range(r) for j in range(r) for k in range(r) for l in range(r))
        rows.append(AsymptoticRow(float(s), mdev, cdev))
    return rows


__all__ = [
    "AsymptoticRow",
    "DomainError",
    "PeriodicityReport",
    "Prepotential",
    "asymptotic_curvature_test",
    "curvature_numeric",
    "kahler_potential",
    "lemma_2_3_reduced",
    "load_prepotential",
    "log_argument",
    "metric_deviation",
    "metric_numeric",
    "periodicity_test",
    "prepotential_from_json",
    "prepotential_to_json",
]
