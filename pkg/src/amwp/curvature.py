"""Curvature of AMWP metrics: full tensor, Ricci, scalar, sectional bounds.

Index conventions.  With g_ij = g_{i jbar} and all t-derivatives reduced to
y-derivatives (a factor 1/4 per mixed pair),

    R_ijkl = 1/4 [ d_k d_l g_ij - sum_{e,d} d_k g_ie g^{ed} d_l g_jd ].

In this sign convention the Ricci form is Ric_ij = -sum_{k,l} g^{kl} R_ijkl
= -(1/4) d_i d_j log det g, the scalar curvature is kappa * sum g^{ij} Ric_ij
and the holomorphic sectional curvature is H(v) = -R(v,vbar,v,vbar)/g(v,vbar)^2
(for f = y^3 this gives -2/3, the curvature of the Poincare-type metric
3/(4y^2) |dt|^2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cubic import as_poly, third_derivatives
from .exactalg import (
    MPoly,
    PoleError,
    RatFn,
    adjugate,
    det,
    exact_quotient,
    poly_gcd,
    ratfn_from_factored,
    rational_inverse,
    to_rational,
)
from .metric import MetricField, amwp_metric, g_matrix

# Scalar-curvature normalization: scalar = KAPPA * trace(g^{-1} Ric).  Fixed
# by exact agreement with the published STU scalar curvature; see
# calibrate_kappa and the acceptance tests.
KAPPA = 1

MAX_SYMBOLIC_R = 3


class CurvatureSizeError(ValueError):
    """Raised when a full symbolic tensor is requested for r > MAX_SYMBOLIC_R."""


def kahler_index_classes(r: int) -> list[tuple[int, int, int, int]]:
    """One representative (i, j, k, l) per class under i<->k, j<->l, (i,k)<->(j,l)."""
    pairs = [(i, k) for i in range(r) for k in range(i, r)]
    out = []
    for a, (i, k) in enumerate(pairs):
        for (j, l) in pairs[a:]:
            out.append((i, j, k, l))
    return out


def kahler_orbit(i, j, k, l):
    out = set()
    for a, b, c, d in ((i, j, k, l), (k, j, i, l), (i, l, k, j), (k, l, i, j)):
        out.add((a, b, c, d))
        out.add((b, a, d, c))
    return out


def _fill(r: int, values: dict) -> list:
    R = [[[[None] * r for _ in range(r)] for _ in range(r)] for _ in range(r)]
    for rep, v in values.items():
        for i, j, k, l in kahler_orbit(*rep):
            R[i][j][k][l] = v
    return R


@dataclass
class CurvatureField:
    """Exact curvature tensor, Ricci form and scalar curvature as RatFns of y."""

    r: int
    R: list
    ricci: list[list[RatFn]] | None = None
    scalar: RatFn | None = None
    kappa: int = KAPPA
    metric: MetricField | None = field(default=None, repr=False)

    def entry(self, i, j, k, l) -> RatFn:
        return self.R[i][j][k][l]

    def at(self, y: Sequence) -> list:
        y = [to_rational(v) for v in y]
        vals = {rep: self.R[rep[0]][rep[1]][rep[2]][rep[3]].evaluate(y) for rep in kahler_index_classes(self.r)}
        return _fill(self.r, vals)


def _lcm(a: MPoly, b: MPoly) -> MPoly:
    return exact_quotient(a * b, poly_gcd(a, b))


def curvature_field(m: MetricField, with_ricci: bool = True) -> CurvatureField:
    """Full symbolic curvature tensor (r <= 3).

    Writes g = P/D over a common denominator D, so that
    d_k g = Q_k / D^2 with Q_k = d_k P D - P d_k D, and

        R_ijkl = [(d_l Q_k D - 2 Q_k d_l D) det P - Q_k adj(P) Q_l]_ij / (4 D^3 det P).

    Every irreducible factor of the denominator divides f or the Hessian
    determinant, so entries are reduced against those two small polynomials.
    """
    r = m.r
    if r > MAX_SYMBOLIC_R:
        raise CurvatureSizeError(f"symbolic curvature is limited to r <= {MAX_SYMBOLIC_R}; use curvature_at for r = {r}")
    D = m.g[0][0].den
    for i in range(r):
        for j in range(i, r):
            D = _lcm(D, m.g[i][j].den)
    P = [[m.g[i][j].num * exact_quotient(D, m.g[i][j].den) for j in range(r)] for i in range(r)]
    dD = [D.diff(k) for k in range(r)]
    Q = [[[P[i][j].diff(k) * D - P[i][j] * dD[k] for j in range(r)] for i in range(r)] for k in range(r)]
    B = adjugate(P)
    detP = det(P)
    den = D ** 3 * detP * 4
    QB = [[[sum((Q[k][i][e] * B[e][d] for e in range(r)), MPoly.zero(D.nvars)) for d in range(r)] for i in range(r)] for k in range(r)]
    factors = _metric_factors(m)
    vals = {}
    for i, j, k, l in kahler_index_classes(r):
        second = Q[k][i][j].diff(l) * D - Q[k][i][j] * dD[l] * 2
        quad = sum((QB[k][i][d] * Q[l][j][d] for d in range(r)), MPoly.zero(D.nvars))
        vals[i, j, k, l] = ratfn_from_factored(second * detP - quad, den, factors)
    cf = CurvatureField(r, _fill(r, vals), metric=m)
    if with_ricci:
        cf.ricci, cf.scalar = ricci_and_scalar(m)
    return cf


def _metric_factors(m: MetricField) -> list[MPoly]:
    # det G is a constant times f^r det(Hess f), so these cover every denominator here
    hess = [[m.f.diff(i).diff(j) for j in range(m.r)] for i in range(m.r)]
    return [m.f, det(hess)]


def _factored_sum(terms, factors) -> RatFn:
    # sum over a common denominator with a single reduction at the end
    nv = factors[0].nvars
    terms = [t for t in terms if not t.num.is_zero()]
    if not terms:
        return RatFn.const(0, nv)
    dens = []
    for t in terms:
        if t.den not in dens:
            dens.append(t.den)
    L = dens[0]
    for d in dens[1:]:
        L = _lcm(L, d)
    num = sum((t.num * exact_quotient(L, t.den) for t in terms), MPoly.zero(nv))
    return ratfn_from_factored(num, L, factors)


def _product(a: RatFn, b: RatFn) -> RatFn:
    return RatFn(a.num * b.num, a.den * b.den, reduced=True)


def _log_hessian(p: MPoly, r: int) -> list[list[RatFn]]:
    # d_i d_j log p = (p_ij p - p_i p_j) / p^2
    d1 = [p.diff(i) for i in range(r)]
    p2 = p * p
    return [[RatFn(d1[i].diff(j) * p - d1[i] * d1[j], p2) for j in range(r)] for i in range(r)]


def ricci_and_scalar(m: MetricField, c: CurvatureField | None = None, kappa: int = KAPPA):
    """Symbolic Ricci form and scalar curvature.

    Without ``c`` the Ricci form comes from -(1/4) d^2 log det g; with ``c``
    it is the contraction -sum g^{kl} R_ijkl of the given tensor.
    """
    r = m.r
    if c is None:
        hn = _log_hessian(m.detg.num, r)
        hd = _log_hessian(m.detg.den, r)
        ric = [[(hd[i][j] - hn[i][j]) * Fraction(1, 4) for j in range(r)] for i in range(r)]
    else:
        factors = _metric_factors(m)
        ric = [[-_factored_sum([_product(m.ginv[k][l], c.R[i][j][k][l]) for k in range(r) for l in range(r)], factors)
                if j >= i else None for j in range(r)] for i in range(r)]
    for i in range(r):
        for j in range(i):
            ric[i][j] = ric[j][i]
    trace = sum((m.ginv[i][j] * ric[i][j] for i in range(r) for j in range(r)), RatFn.const(0, m.f.nvars))
    return ric, trace * kappa


def scalar_curvature(m: MetricField, kappa: int = KAPPA) -> RatFn:
    return ricci_and_scalar(m, kappa=kappa)[1]


def calibrate_kappa(unit_scalar: RatFn, printed: RatFn, candidates=(1, 2)) -> int:
    """The unique kappa with kappa * unit_scalar == printed, exactly."""
    hits = [k for k in candidates if unit_scalar * k == printed]
    if len(hits) != 1:
        raise ValueError(f"kappa calibration is not unique: matches {hits}")
    return hits[0]


# -- pointwise exact ---------------------------------------------------------

@dataclass
class PointCurvature:
    """Exact curvature data at one point y."""

    y: list
    g: list[list[Fraction]]
    ginv: list[list[Fraction]]
    R: list
    ricci: list[list[Fraction]]
    scalar: Fraction


def curvature_at(m: MetricField, y: Sequence, kappa: int = KAPPA) -> PointCurvature:
    """Exact R_ijkl, Ricci and scalar curvature at y; any r."""
    r = m.r
    g, dg, d2g = m.jets_at(y)
    ginv = rational_inverse(g)
    factors = _metric_factors(m)
    vals = {}
    for i, j, k, l in kahler_index_classes(r):
        quad = sum(dg[k][i][e] * ginv[e][d] * dg[l][j][d] for e in range(r) for d in range(r))
        vals[i, j, k, l] = to_rational(Fraction(d2g[k][l][i][j] - quad) / 4)
    R = _fill(r, vals)
    ric = [[to_rational(-sum(ginv[k][l] * R[i][j][k][l] for k in range(r) for l in range(r))) for j in range(r)]
           for i in range(r)]
    scalar = to_rational(kappa * sum(ginv[i][j] * ric[i][j] for i in range(r) for j in range(r)))
    return PointCurvature(list(y), g, ginv, R, ric, scalar)


def _contract(R, a, b, c, d) -> complex:
    r = len(R)
    tot = 0j
    for i in range(r):
        if a[i] == 0:
            continue
        for j in range(r):
            if b[j] == 0:
                continue
            for k in range(r):
                if c[k] == 0:
                    continue
                for l in range(r):
                    tot += float(R[i][j][k][l]) * a[i] * b[j] * c[k] * d[l]
    return tot


def _gnorm(g, v) -> float:
    r = len(g)
    val = sum(float(g[i][j]) * v[i] * v[j].conjugate() for i in range(r) for j in range(r))
    return val.real


def hsc_at(pc: PointCurvature, v: Sequence[complex]) -> float:
    """Holomorphic sectional curvature -R(v, vbar, v, vbar) / g(v, vbar)^2."""
    v = [complex(z) for z in v]
    if all(z == 0 for z in v):
        raise ValueError("zero direction")
    vb = [z.conjugate() for z in v]
    return -_contract(pc.R, v, vb, v, vb).real / _gnorm(pc.g, v) ** 2


def bisectional_at(pc: PointCurvature, v: Sequence[complex], w: Sequence[complex]) -> float:
    """Holomorphic bisectional curvature -R(v, vbar, w, wbar) / (g(v, vbar) g(w, wbar))."""
    v = [complex(z) for z in v]
    w = [complex(z) for z in w]
    if all(z == 0 for z in v) or all(z == 0 for z in w):
        raise ValueError("zero direction")
    vb = [z.conjugate() for z in v]
    wb = [z.conjugate() for z in w]
    return -_contract(pc.R, v, vb, w, wb).real / (_gnorm(pc.g, v) * _gnorm(pc.g, w))


# -- the closed-form curvature identity --------------------------------------

def conjectured_curvature(f, r: int | None = None) -> list:
    """Closed form g_ij g_kl + g_il g_kj - sum g^{pq} f_ikp f_jlq / (64 f^2) as RatFns."""
    p, r = as_poly(f, r)
    m = amwp_metric(p, r)
    f3 = third_derivatives(p, r)
    factors = _metric_factors(m)
    vals = {}
    for i, j, k, l in kahler_index_classes(r):
        last = sum((m.ginv[a][b] * (f3[i][k][a] * f3[j][l][b]) for a in range(r) for b in range(r)),
                   RatFn.const(0, p.nvars))
        vals[i, j, k, l] = m.g[i][j] * m.g[k][l] + m.g[i][l] * m.g[k][j] - last / (p * p * 64)
    return _fill(r, vals)


@dataclass
class IdentityReport:
    holds: bool
    mode: str  # "exact" (polynomial identity) or "pointwise"
    checked: int
    failures: list = field(default_factory=list)
    max_residual: float = 0.0


def _cleared_sides(p: MPoly, r: int):
    """Polynomial numerators of both sides over the common denominator 16 f^4 det G."""
    gm = g_matrix(p, r)
    G, B, detG = gm.G, gm.B, gm.detG
    fd = [p.diff(k) for k in range(r)]
    f3 = third_derivatives(p, r)
    N = [[[p * G[i][j].diff(k) - fd[k] * G[i][j] * 2 for j in range(r)] for i in range(r)] for k in range(r)]
    f4 = p ** 4
    zero = MPoly.zero(p.nvars)
    NB = [[[sum((N[k][i][e] * B[e][d] for e in range(r)), zero) for d in range(r)] for i in range(r)] for k in range(r)]
    out = {}
    for i, j, k, l in kahler_index_classes(r):
        M = p * N[k][i][j].diff(l) - fd[l] * N[k][i][j] * 3
        lhs = M * detG - sum((NB[k][i][d] * N[l][j][d] for d in range(r)), zero)
        tail = sum((B[a][b] * (f3[i][k][a] * f3[j][l][b]) for a in range(r) for b in range(r)), zero)
        rhs = (G[i][j] * G[k][l] + G[i][l] * G[k][j]) * detG - f4 * tail
        out[i, j, k, l] = (lhs, rhs)
    return out


def conjecture_2_8_residual(f, r: int | None = None, points: Sequence[Sequence] | None = None) -> IdentityReport:
    """Check the closed-form curvature identity.

    For r <= 3 this is an exact polynomial identity after clearing the
    denominator 16 f^4 det G (extra parameter variables in ``f`` are carried
    along symbolically).  For larger r the tensor is compared exactly at the
    given rational points.
    """
    p, r = as_poly(f, r)
    if r <= MAX_SYMBOLIC_R:
        failures = []
        worst = 0
        for idx, (lhs, rhs) in _cleared_sides(p, r).items():
            diff = lhs - rhs
            if not diff.is_zero():
                failures.append(idx)
                worst = max(worst, max(abs(c) for c in diff.terms.values()))
        return IdentityReport(not failures, "exact", len(kahler_index_classes(r)), failures, float(worst))
    if not points:
        raise ValueError("pointwise mode needs sample points")
    m = amwp_metric(p, r)
    f3 = third_derivatives(p, r)
    failures = []
    worst = Fraction(0)
    for y in points:
        y = [to_rational(v) for v in y]
        try:
            pc = curvature_at(m, y)
        except PoleError:
            continue
        fv = Fraction(p.evaluate(y))
        t3 = [[[Fraction(f3[a][b][c].evaluate(y)) for c in range(r)] for b in range(r)] for a in range(r)]
        for i, j, k, l in kahler_index_classes(r):
            tail = sum(pc.ginv[a][b] * t3[i][k][a] * t3[j][l][b] for a in range(r) for b in range(r))
            rhs = pc.g[i][j] * pc.g[k][l] + pc.g[i][l] * pc.g[k][j] - tail / (64 * fv * fv)
            res = abs(Fraction(pc.R[i][j][k][l]) - rhs)
            if res:
                failures.append((tuple(y), (i, j, k, l)))
            worst = max(worst, res)
    return IdentityReport(not failures, "pointwise", len(points), failures, float(worst))


__all__ = [
    "KAPPA",
    "CurvatureField",
    "CurvatureSizeError",
    "IdentityReport",
    "PointCurvature",
    "bisectional_at",
    "calibrate_kappa",
    "conjecture_2_8_residual",
    "conjectured_curvature",
    "curvature_at",
    "curvature_field",
    "hsc_at",
    "kahler_index_classes",
    "ricci_and_scalar",
    "scalar_curvature",
]
