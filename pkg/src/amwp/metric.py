"""The AMWP metric of a cubic form and the geometry of its level sets.

The Kahler potential is -log f(y) with t = x + iy.  Since everything is
independent of x, each pair of derivatives d/dt_i d/dtbar_j acting on such a
function equals (1/4) d^2/dy_i dy_j, and a product (d/dt_k u)(d/dtbar_l v)
equals (1/4) du/dy_k dv/dy_l.  All exact formulas below use this reduction
and work purely in the real coordinates y.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import numdiff
from .cubic import CubicForm, as_poly, hessian_data, hessian_matrix, s_invariant
from .exactalg import MPoly, PoleError, RatFn, adjugate, det, rational_det, to_rational


@dataclass(frozen=True)
class GMatrix:
    """G_ij = f_i f_j - f f_ij and its adjugate B."""

    G: list[list[MPoly]]
    B: list[list[MPoly]]
    detG: MPoly


def g_matrix(f, r: int | None = None) -> GMatrix:
    p, r = as_poly(f, r)
    first = [p.diff(i) for i in range(r)]
    G = [[first[i] * first[j] - p * first[i].diff(j) for j in range(r)] for i in range(r)]
    return GMatrix(G, adjugate(G), det(G))


@dataclass
class MetricField:
    """Exact metric g_{i jbar}(y) = G_ij / (4 f^2).

    det g, the inverse and the adjugate data are built on first use, so
    pointwise work at larger r never pays for them.
    """

    r: int
    f: MPoly
    G: list[list[MPoly]]
    g: list[list[RatFn]]
    _pointwise: dict = field(default_factory=dict, repr=False)

    @cached_property
    def gm(self) -> GMatrix:
        return GMatrix(self.G, adjugate(self.G), det(self.G))

    @cached_property
    def detg(self) -> RatFn:
        return RatFn(self.gm.detG, (self.f * self.f * 4) ** self.r)

    @cached_property
    def ginv(self) -> list[list[RatFn]]:
        four_f2 = self.f * self.f * 4
        B, detG = self.gm.B, self.gm.detG
        out = [[None] * self.r for _ in range(self.r)]
        for i in range(self.r):
            for j in range(i, self.r):
                out[i][j] = out[j][i] = RatFn(four_f2 * B[i][j], detG)
        return out

    def at(self, y: Sequence) -> list[list]:
        """Exact matrix g(y)."""
        y = [to_rational(v) for v in y]
        return [[e.evaluate(y) for e in row] for row in self.g]

    def jets_at(self, y: Sequence):
        """Exact (g, dg, d2g) at y: dg[k][i][j] = d g_ij/dy_k, d2g[k][l][i][j].

        Only polynomial derivatives are formed; the quotient rule is applied
        to the numbers, so no gcd work is needed.
        """
        if "polys" not in self._pointwise:
            polys = {}
            for i in range(self.r):
                for j in range(i, self.r):
                    n, d = self.g[i][j].num, self.g[i][j].den
                    nd = [n.diff(k) for k in range(self.r)]
                    dd = [d.diff(k) for k in range(self.r)]
                    ndd = [[nd[k].diff(l) for l in range(self.r)] for k in range(self.r)]
                    ddd = [[dd[k].diff(l) for l in range(self.r)] for k in range(self.r)]
                    polys[i, j] = (n, d, nd, dd, ndd, ddd)
            self._pointwise["polys"] = polys
        polys = self._pointwise["polys"]
        r = self.r
        y = [to_rational(v) for v in y]
        g = [[None] * r for _ in range(r)]
        dg = [[[None] * r for _ in range(r)] for _ in range(r)]
        d2g = [[[[None] * r for _ in range(r)] for _ in range(r)] for _ in range(r)]
        for (i, j), (n, d, nd, dd, ndd, ddd) in polys.items():
            dv = d.evaluate(y)
            if dv == 0:
                raise PoleError(f"metric has a pole at {tuple(y)}")
            dv = Fraction(dv)
            gv = n.evaluate(y) / dv
            ddv = [dd[k].evaluate(y) for k in range(r)]
            gk = [(nd[k].evaluate(y) - gv * ddv[k]) / dv for k in range(r)]
            for a, b in ((i, j), (j, i)):
                g[a][b] = to_rational(gv)
                for k in range(r):
                    dg[k][a][b] = to_rational(gk[k])
            for k in range(r):
                for l in range(k, r):
                    # n = g d  =>  n_kl = g_kl d + g_k d_l + g_l d_k + g d_kl
                    v = (ndd[k][l].evaluate(y) - gk[k] * ddv[l] - gk[l] * ddv[k] - gv * ddd[k][l].evaluate(y)) / dv
                    v = to_rational(v)
                    for a, b in ((i, j), (j, i)):
                        d2g[k][l][a][b] = v
                        d2g[l][k][a][b] = v
        return g, dg, d2g


def amwp_metric(f, r: int | None = None) -> MetricField:
    """Metric with Kahler potential -log f, as exact rational functions of y."""
    p, r = as_poly(f, r)
    first = [p.diff(i) for i in range(r)]
    G = [[None] * r for _ in range(r)]
    g = [[None] * r for _ in range(r)]
    four_f2 = p * p * 4
    for i in range(r):
        for j in range(i, r):
            G[i][j] = G[j][i] = first[i] * first[j] - p * first[i].diff(j)
            g[i][j] = g[j][i] = RatFn(G[i][j], four_f2)
    return MetricField(r, p, G, g)


def metric_positive_at(m: MetricField, y: Sequence) -> bool:
    """Exact leading-principal-minor test for positive definiteness of g(y)."""
    gy = m.at(y)
    return all(rational_det([row[:k] for row in gy[:k]]) > 0 for k in range(1, m.r + 1))


# -- slice geometry ----------------------------------------------------------

def slice_curvature_formula(f: CubicForm, y: Sequence):
    """Gaussian curvature of the Hodge metric on {f = 1} at the ray through y.

    R = -9/4 + S/(4 h^2) with h evaluated on the level set; since h is
    homogeneous of degree 3 this is -9/4 + S f(y)^2 / (4 h(y)^2) at any
    point of the ray, and stays exact.
    """
    if f.r != 3:
        raise ValueError("slice curvature formula needs r = 3")
    y = [to_rational(v) for v in y]
    hd = hessian_data(f)
    hv = hd.h.evaluate(y)
    if hv == 0:
        raise PoleError("h vanishes: curvature blow-up locus")
    fv = f.poly().evaluate(y)
    return to_rational(Fraction(-9, 4) + Fraction(s_invariant(f)) * Fraction(fv) ** 2 / (4 * Fraction(hv) ** 2))


def _newton_level(fn, dfn, y, c, target=1.0, iters=60):
    y = list(y)
    for _ in range(iters):
        val = fn(y) - target
        der = dfn[c](y)
        step = val / der
        y[c] -= step
        if abs(step) < 1e-15 * max(1.0, abs(y[c])):
            break
    return y


def slice_curvature_numeric(f: CubicForm, y0: Sequence, h: float = 1e-3) -> float:
    """Independent numeric Gaussian curvature of the Hodge metric on {f = 1}.

    Solves f = 1 for one coordinate in a chart around y0/f(y0)^(1/3), builds
    the first fundamental form of -(1/6) Hess f and applies Brioschi's
    formula with Richardson-extrapolated central differences.
    """
    if f.r != 3:
        raise ValueError("slice curvature needs r = 3")
    p = f.poly()
    fn = p.float_evaluator()
    grads = [p.diff(i) for i in range(3)]
    dfn = [g.float_evaluator() for g in grads]
    hess = [[e.float_evaluator() for e in row] for row in hessian_matrix(p, 3)]
    y0 = [float(v) for v in y0]
    fv = fn(y0)
    if fv <= 0:
        raise ValueError("point is outside f > 0")
    base = [v / fv ** (1 / 3) for v in y0]
    gabs = [abs(d(base)) for d in dfn]
    order = sorted(range(3), key=lambda i: -gabs[i])
    if gabs[order[0]] < 1e-12:
        raise ValueError("degenerate chart: gradient vanishes")
    c = order[0]
    a, b = [i for i in range(3) if i != c]

    def fff(uv):
        y = list(base)
        y[a] += uv[0]
        y[b] += uv[1]
        y = _newton_level(fn, dfn, y, c)
        fa, fb, fc = dfn[a](y), dfn[b](y), dfn[c](y)
        xu = [0.0] * 3
        xv = [0.0] * 3
        xu[a], xu[c] = 1.0, -fa / fc
        xv[b], xv[c] = 1.0, -fb / fc
        m = [[-hess[i][j](y) / 6 for j in range(3)] for i in range(3)]

        def form(u, v):
            return sum(u[i] * m[i][j] * v[j] for i in range(3) for j in range(3))

        return [form(xu, xu), form(xu, xv), form(xv, xv)]

    x = [0.0, 0.0]
    cache: dict = {}
    E, F, G = fff(x)
    d_u = numdiff.partial(fff, x, (0,), h, cache=cache)
    d_v = numdiff.partial(fff, x, (1,), h, cache=cache)
    d_uu = numdiff.partial(fff, x, (0, 0), h, cache=cache)
    d_uv = numdiff.partial(fff, x, (0, 1), h, cache=cache)
    d_vv = numdiff.partial(fff, x, (1, 1), h, cache=cache)
    Eu, Fu, Gu = d_u
    Ev, Fv, Gv = d_v
    Evv, Fuv, Guu = d_vv[0], d_uv[1], d_uu[2]

    def det3(m):
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    m1 = [[-Evv / 2 + Fuv - Guu / 2, Eu / 2, Fu - Ev / 2],
          [Fv - Gu / 2, E, F],
          [Gv / 2, F, G]]
    m2 = [[0.0, Ev / 2, Gu / 2],
          [Ev / 2, E, F],
          [Gu / 2, F, G]]
    return (det3(m1) - det3(m2)) / (E * G - F * F) ** 2


# -- Riemannian curvature of the Hessian metric on the cone ------------------

def riemann_tensor_numeric(m: MetricField, y0: Sequence, h=Fraction(1, 1000)) -> tuple[list, list]:
    """Riemann tensor R_abcd of the real metric g_ab(y) on the cone at y0.

    Metric derivatives come from Richardson central differences of exact
    entry evaluations at rational points, so there is no round-off; only the
    final contraction is done in floats.  Returns (R, g) with g as floats.
    """
    r = m.r
    y0 = [to_rational(v) for v in y0]

    def flat(y):
        gy = m.at(y)
        return [gy[i][j] for i in range(r) for j in range(r)]

    cache: dict = {}
    g0 = [[float(v) for v in row] for row in m.at(y0)]
    dg = [numdiff.partial(flat, y0, (k,), h, cache=cache) for k in range(r)]
    d2g = [[numdiff.partial(flat, y0, (k, l), h, cache=cache) if l >= k else None for l in range(r)] for k in range(r)]

    def G1(k, i, j):
        return float(dg[k][i * r + j])

    def G2(k, l, i, j):
        if l < k:
            k, l = l, k
        return float(d2g[k][l][i * r + j])

    ginv = np.linalg.inv(np.array(g0))
    # Christoffel symbols of the first kind [ij, l] and second kind
    first = [[[0.5 * (G1(i, j, l) + G1(j, i, l) - G1(l, i, j)) for l in range(r)] for j in range(r)] for i in range(r)]
    gam = [[[sum(ginv[k][l] * first[i][j][l] for l in range(r)) for j in range(r)] for i in range(r)] for k in range(r)]
    R = [[[[0.0] * r for _ in range(r)] for _ in range(r)] for _ in range(r)]
    for a in range(r):
        for b in range(r):
            for c in range(r):
                for d in range(r):
                    v = 0.5 * (G2(b, c, a, d) + G2(a, d, b, c) - G2(a, c, b, d) - G2(b, d, a, c))
                    for e in range(r):
                        for f in range(r):
                            v += g0[e][f] * (gam[e][b][c] * gam[f][a][d] - gam[e][b][d] * gam[f][a][c])
                    R[a][b][c][d] = v
    return R, g0


def sectional_curvature(R, g, u: Sequence[float], w: Sequence[float]) -> float:
    """K(u, w) = R(u, w, u, w) / (|u|^2 |w|^2 - <u, w>^2); round spheres are positive."""
    r = len(g)
    num = sum(R[a][b][c][d] * u[a] * w[b] * u[c] * w[d]
              for a in range(r) for b in range(r) for c in range(r) for d in range(r))
    guu = sum(g[i][j] * u[i] * u[j] for i in range(r) for j in range(r))
    gww = sum(g[i][j] * w[i] * w[j] for i in range(r) for j in range(r))
    guw = sum(g[i][j] * u[i] * w[j] for i in range(r) for j in range(r))
    return num / (guu * gww - guw * guw)


def radial_flatness_check(f, y0: Sequence, m: MetricField | None = None) -> float:
    """max |K(span(y0, e_k))| over coordinate directions e_k not parallel to y0."""
    m = amwp_metric(f) if m is None else m
    R, g = riemann_tensor_numeric(m, y0)
    u = [float(v) for v in y0]
    worst = 0.0
    for k in range(m.r):
        w = [0.0] * m.r
        w[k] = 1.0
        # skip directions parallel to y0
        cross = max(abs(u[i] * w[j] - u[j] * w[i]) for i in range(m.r) for j in range(m.r))
        if cross < 1e-12:
            continue
        worst = max(worst, abs(sectional_curvature(R, g, u, w)))
    return worst


def level_set_tangent_basis(f, y0: Sequence) -> list[list[float]]:
    """Two independent tangent vectors to {f = f(y0)} at y0 (r = 3)."""
    p, r = as_poly(f)
    y = [Fraction(v) for v in y0]
    grad = [float(p.diff(i).evaluate(y)) for i in range(r)]
    c = max(range(r), key=lambda i: abs(grad[i]))
    out = []
    for k in range(r):
        if k == c:
            continue
        w = [0.0] * r
        w[k] = 1.0
        w[c] = -grad[k] / grad[c]
        out.append(w)
    return out


def radial_point_on_level_set(f, y: Sequence) -> list[float]:
    p, _ = as_poly(f)
    fv = float(p.evaluate([to_rational(v) for v in y]))
    return [float(v) / fv ** (1 / 3) for v in y]


__all__ = [
    "GMatrix",
    "MetricField",
    "amwp_metric",
    "g_matrix",
    "metric_positive_at",
    "slice_curvature_formula",
    "slice_curvature_numeric",
    "radial_flatness_check",
    "riemann_tensor_numeric",
    "sectional_curvature",
    "level_set_tangent_basis",
    "radial_point_on_level_set",
]
