"""Exact identity checks for ternary cubics and curvature blow-up scans."""

from __future__ import annotations

import ast
import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .cubic import CubicForm, as_poly, hessian_data, index_cone_contains, third_derivatives
from .curvature import curvature_at
from .exactalg import MPoly, PoleError, RatFn, divides, exact_quotient, to_rational
from .metric import MetricField, amwp_metric, g_matrix

# tr(B C(1,1)) = TYPE_II_TRACE_CONSTANT * ((b^2 - ac) y2^2 + bc y2 y3 + c^2 y3^2)(f - 3 y1^3) f
# for f = y1^3 + y2 (a y2^2 + 3b y2 y3 + 3c y3^2); found by exact division.
TYPE_II_TRACE_CONSTANT = 648


@dataclass(frozen=True)
class Verdict:
    holds: bool
    detail: str = ""


def lemma_3_5_verify(f, r: int | None = None) -> Verdict:
    """det G - (1/2) f^3 H == 0 as a polynomial (r = 3; parameters allowed)."""
    p, r = as_poly(f, r)
    if r != 3:
        raise ValueError("the determinant identity is stated for r = 3")
    lhs = g_matrix(p, r).detG
    rhs = p ** 3 * hessian_data(p, r).H * Fraction(1, 2)
    diff = lhs - rhs
    return Verdict(diff.is_zero(), "" if diff.is_zero() else f"residual has {len(diff.terms)} terms")


@dataclass(frozen=True)
class CTensorSlice:
    """C(i,j)_pq = f_ijp f_ijq; rank <= 1 and positive semi-definite."""

    i: int
    j: int
    C: list[list]

    def rank(self) -> int:
        return 0 if all(v == 0 for row in self.C for v in row) else 1

    def is_psd(self) -> bool:
        # an outer product u u^T: diagonal non-negative and every 2x2 minor zero
        n = len(self.C)
        if any(self.C[p][p] < 0 for p in range(n)):
            return False
        return all(self.C[p][p] * self.C[q][q] == self.C[p][q] * self.C[q][p] for p in range(n) for q in range(n))


def c_tensor_slice(f, i: int, j: int, r: int | None = None) -> CTensorSlice:
    """C(i, j) with 0-based i, j; entries are constants (or parameter polynomials)."""
    p, r = as_poly(f, r)
    f3 = third_derivatives(p, r)
    vec = [f3[i][j][q] for q in range(r)]
    C = [[vec[a] * vec[b] for b in range(r)] for a in range(r)]
    if all(v.is_constant() for row in C for v in row):
        C = [[v.constant_value() for v in row] for row in C]
    return CTensorSlice(i, j, C)


def _trace_bc(p: MPoly, r: int, i: int, j: int) -> MPoly:
    B = g_matrix(p, r).B
    f3 = third_derivatives(p, r)
    vec = [f3[i][j][q] for q in range(r)]
    zero = MPoly.zero(p.nvars)
    return sum((B[a][b] * vec[a] * vec[b] for a in range(r) for b in range(r)), zero)


def trace_term(f, i: int, j: int, r: int | None = None) -> RatFn:
    """-(1/8) tr(B C(i,j)) / (H f^3) with 0-based i, j."""
    p, r = as_poly(f, r)
    if r != 3:
        raise ValueError("trace term is defined for r = 3")
    H = hessian_data(p, r).H
    return RatFn(_trace_bc(p, r, i, j) * Fraction(-1, 8), H * p ** 3)


def conjecture_last_term(f, i: int, j: int, r: int | None = None) -> RatFn:
    """The g^{pq} f_ijp f_ijq / (64 f^2) term of the closed form for R_{i i j j}, with its sign."""
    p, r = as_poly(f, r)
    m = amwp_metric(p, r)
    f3 = third_derivatives(p, r)
    tot = sum((m.ginv[a][b] * (f3[i][j][a] * f3[i][j][b]) for a in range(r) for b in range(r)),
              RatFn.const(0, p.nvars))
    return -tot / (p * p * 64)


def type2_cubic(a, b, c) -> MPoly:
    """y1^3 + y2 (a y2^2 + 3b y2 y3 + 3c y3^2)."""
    a, b, c = (to_rational(v) for v in (a, b, c))
    y1, y2, y3 = MPoly.variables(3)
    return y1 ** 3 + y2 * (y2 * y2 * a + y2 * y3 * (3 * b) + y3 * y3 * (3 * c))


def theorem_3_7_verify(a, b, c) -> tuple[Verdict, Fraction | None]:
    """Divide tr(B C(1,1)) by ((b^2-ac) y2^2 + bc y2 y3 + c^2 y3^2)(f - 3 y1^3) f.

    Returns (verdict, constant); the verdict holds when the quotient is a
    nonzero constant.
    """
    a, b, c = (to_rational(v) for v in (a, b, c))
    if b == 0 and c == 0:
        raise ValueError("need (b, c) != (0, 0)")
    f = type2_cubic(a, b, c)
    y1, y2, y3 = MPoly.variables(3)
    quad = y2 * y2 * (b * b - a * c) + y2 * y3 * (b * c) + y3 * y3 * (c * c)
    divisor = quad * (f - y1 ** 3 * 3) * f
    tr = _trace_bc(f, 3, 0, 0)
    if not divides(divisor, tr):
        return Verdict(False, "not divisible"), None
    q = exact_quotient(tr, divisor)
    if not q.is_constant() or q.is_zero():
        return Verdict(False, f"quotient is {q}"), None
    return Verdict(True), q.constant_value()


# -- blow-up scans -----------------------------------------------------------

@dataclass(frozen=True)
class ScanRow:
    s: Fraction
    y: tuple
    f: Fraction | None
    scalar: Fraction | None
    in_cone: bool


def blow_up_scan(
    f: CubicForm,
    path: Callable[[Fraction], Sequence],
    samples: Iterable,
    m: MetricField | None = None,
) -> list[ScanRow]:
    """Exact scalar curvature along y(s); rows leaving the index cone are flagged."""
    m = amwp_metric(f) if m is None else m
    p = f.poly()
    rows = []
    for s in samples:
        s = to_rational(s)
        y = tuple(to_rational(v) for v in path(s))
        fv = to_rational(p.evaluate(list(y)))
        inside = index_cone_contains(f, y)
        scalar = None
        if inside:
            try:
                scalar = curvature_at(m, y).scalar
            except PoleError:
                inside = False
        rows.append(ScanRow(s, y, fv, scalar, inside))
    return rows


def parse_path(text: str) -> Callable[[Fraction], list]:
    """Path from text like "s^2,s,s" or "1,1/s,1": comma-separated polynomials/rationals in s."""
    parts = [t.strip() for t in text.split(",")]

    def term(expr: str):
        tree = ast.parse(expr.replace("^", "**"), mode="eval")
        allowed = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Constant, ast.Name, ast.Load,
                   ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub, ast.UAdd)
        for node in ast.walk(tree):
            if not isinstance(node, allowed):
                raise ValueError(f"unsupported path expression: {expr!r}")
            if isinstance(node, ast.Name) and node.id != "s":
                raise ValueError(f"unknown symbol {node.id!r} in path")
            if isinstance(node, ast.Constant) and not isinstance(node.value, int):
                raise ValueError(f"only integer literals allowed in path: {expr!r}")
        code = compile(tree, "<path>", "eval")
        return lambda s: eval(code, {"__builtins__": {}}, {"s": Fraction(s)})

    fns = [term(t) for t in parts]
    return lambda s: [to_rational(fn(s)) for fn in fns]


def scan_csv(rows: Sequence[ScanRow], header_comments: Sequence[str] = ()) -> str:
    out = io.StringIO()
    for line in header_comments:
        out.write(f"# {line}\n")
    w = csv.writer(out, lineterminator="\n")
    r = len(rows[0].y) if rows else 3
    w.writerow(["s"] + [f"y{i + 1}" for i in range(r)] + ["f", "scalar", "s_float", "scalar_float", "in_cone"])
    for row in rows:
        w.writerow([str(row.s)] + [str(v) for v in row.y]
                   + [str(row.f), "" if row.scalar is None else str(row.scalar),
                      repr(float(row.s)), "" if row.scalar is None else repr(float(row.scalar)),
                      int(row.in_cone)])
    return out.getvalue()


__all__ = [
    "TYPE_II_TRACE_CONSTANT",
    "CTensorSlice",
    "ScanRow",
    "Verdict",
    "blow_up_scan",
    "c_tensor_slice",
    "conjecture_last_term",
    "lemma_3_5_verify",
    "parse_path",
    "scan_csv",
    "theorem_3_7_verify",
    "trace_term",
    "type2_cubic",
]
