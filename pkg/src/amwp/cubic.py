"""Cubic forms: symmetric coefficient tensors, Hessians, the S-invariant.

A cubic in ``r`` variables is stored through its fully symmetric tensor
``a_ijk`` so that ``f(y) = sum_{i,j,k} a_ijk y_i y_j y_k`` over *ordered*
index triples.  Indices are 0-based in code; the intersection-number input
uses the 1-based labels ``(1, 1, 2)`` etc. found in tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping, Sequence

from .exactalg import MPoly, det, parse_rational, to_rational

Triple = tuple[int, int, int]

# Overall scale of the S-invariant.  The umbral bracket product below gives 24
# on the STU cubic; dividing by 24 puts S(STU) = 1.  See calibrate_s_normalization.
S_NORMALIZATION = Fraction(1, 24)


class CubicError(ValueError):
    pass


def _multinomial(e: Sequence[int]) -> int:
    out = factorial(sum(e))
    for k in e:
        out //= factorial(k)
    return out


def _triple_exps(t: Triple, r: int) -> tuple[int, ...]:
    e = [0] * r
    for i in t:
        e[i] += 1
    return tuple(e)


@dataclass(frozen=True)
class CubicForm:
    """Real cubic form with exact symmetric coefficients.

    ``coeffs`` maps sorted 0-based triples ``(i <= j <= k)`` to nonzero
    ``a_ijk``; all other entries (up to permutation) are zero.
    """

    r: int
    coeffs: Mapping[Triple, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.r < 1:
            raise CubicError("a cubic form needs at least one variable")
        clean = {}
        for t, v in self.coeffs.items():
            t = tuple(sorted(t))
            if len(t) != 3 or not all(0 <= i < self.r for i in t):
                raise CubicError(f"index triple {t} out of range for r={self.r}")
            v = to_rational(v)
            if v:
                clean[t] = v
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def a(self, i: int, j: int, k: int):
        return self.coeffs.get(tuple(sorted((i, j, k))), 0)

    def tensor(self) -> list[list[list]]:
        r = self.r
        return [[[self.a(i, j, k) for k in range(r)] for j in range(r)] for i in range(r)]

    def poly(self) -> MPoly:
        """f(y) as a polynomial in y_1..y_r."""
        terms = {}
        for t, v in self.coeffs.items():
            e = _triple_exps(t, self.r)
            terms[e] = terms.get(e, 0) + v * _multinomial(e)
        return MPoly(self.r, terms)

    def monomials(self) -> dict[tuple[int, ...], object]:
        return dict(self.poly().terms)

    def __call__(self, y: Sequence):
        return self.poly().evaluate(list(y))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, CubicForm):
            return NotImplemented
        return self.r == other.r and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self):
        return hash((self.r, tuple(self.coeffs.items())))

    def __str__(self):
        return self.poly().to_str()


def cubic_from_monomials(r: int, monomials: Mapping[Sequence[int], object]) -> CubicForm:
    """Cubic from printed monomial coefficients, e.g. ``{(3,0,0): 8, (2,1,0): 6}``."""
    coeffs: dict[Triple, Fraction] = {}
    for e, v in monomials.items():
        e = tuple(int(k) for k in e)
        if len(e) != r:
            raise CubicError(f"exponent vector {e} does not have length {r}")
        if sum(e) != 3 or any(k < 0 for k in e):
            raise CubicError(f"non-cubic monomial {e}")
        t = tuple(i for i in range(r) for _ in range(e[i]))
        coeffs[t] = coeffs.get(t, 0) + Fraction(to_rational(v)) / _multinomial(e)
    return CubicForm(r, coeffs)


def cubic_from_poly(p: MPoly) -> CubicForm:
    if not p.is_zero() and (not p.is_homogeneous() or p.total_degree() != 3):
        raise CubicError("polynomial is not a homogeneous cubic")
    return cubic_from_monomials(p.nvars, p.terms)


def cubic_from_intersection(r: int, numbers) -> CubicForm:
    """Cubic from intersection numbers ``a_ijk`` given with 1-based indices.

    ``numbers`` is an iterable of ``((i, j, k), value)`` pairs or a mapping.
    """
    items = numbers.items() if isinstance(numbers, Mapping) else numbers
    coeffs: dict[Triple, object] = {}
    for idx, v in items:
        t = tuple(sorted(int(i) - 1 for i in idx))
        if len(t) != 3 or not all(0 <= i < r for i in t):
            raise CubicError(f"index triple {tuple(idx)} out of range for r={r}")
        if t in coeffs:
            raise CubicError(f"duplicate intersection triple {tuple(i + 1 for i in t)}")
        coeffs[t] = to_rational(v)
    return CubicForm(r, coeffs)


def as_poly(f, r: int | None = None) -> tuple[MPoly, int]:
    """Normalize a CubicForm or polynomial to ``(poly, r)``.

    For a polynomial with extra parameter variables (e.g. the Weierstrass
    family in ``y1, y2, y3, lam, mu``) pass ``r`` = number of geometric
    variables; they must come first.
    """
    if isinstance(f, CubicForm):
        return f.poly(), f.r
    if isinstance(f, MPoly):
        return f, f.nvars if r is None else r
    raise TypeError(f"expected CubicForm or MPoly, got {type(f).__name__}")


@dataclass(frozen=True)
class HessianData:
    hess: list[list[MPoly]]
    H: MPoly
    h: MPoly


def hessian_matrix(p: MPoly, r: int) -> list[list[MPoly]]:
    first = [p.diff(i) for i in range(r)]
    return [[first[i].diff(j) for j in range(r)] for i in range(r)]


def hessian_data(f, r: int | None = None) -> HessianData:
    p, r = as_poly(f, r)
    hess = hessian_matrix(p, r)
    H = det(hess)
    return HessianData(hess, H, H * Fraction(1, 6 ** r))


def third_derivatives(f, r: int | None = None) -> list[list[list[MPoly]]]:
    """f_ijk as polynomials (constants in y; may involve parameter variables)."""
    p, r = as_poly(f, r)
    out = [[[None] * r for _ in range(r)] for _ in range(r)]
    for i, j, k in itertools.combinations_with_replacement(range(r), 3):
        v = p.diff(i).diff(j).diff(k)
        for a, b, c in set(itertools.permutations((i, j, k))):
            out[a][b][c] = v
    return out


# -- S-invariant -------------------------------------------------------------

@lru_cache(maxsize=1)
def _bracket_expansion() -> tuple[tuple[int, tuple[Triple, Triple, Triple, Triple]], ...]:
    """Expand [abc][abd][acd][bcd] for symbolic vectors a, b, c, d in 3-space.

    Each monomial is returned as the four index multisets (one per symbol)
    so that the umbral rule a_i a_j a_k -> a_ijk can be applied directly.
    """
    nv = 12
    sym = [[MPoly.var(3 * s + i, nv) for i in range(3)] for s in range(4)]
    a, b, c, d = sym
    prod = det([a, b, c]) * det([a, b, d]) * det([a, c, d]) * det([b, c, d])
    out = []
    for e, coef in prod.sorted_terms():
        triples = []
        for s in range(4):
            block = e[3 * s:3 * s + 3]
            triples.append(tuple(i for i in range(3) for _ in range(block[i])))
        out.append((coef, tuple(triples)))
    return tuple(out)


def s_invariant_raw(f: CubicForm) -> Fraction:
    """Umbral evaluation of the bracket monomial, before normalization."""
    if f.r != 3:
        raise CubicError("the S-invariant is defined for ternary cubics (r = 3)")
    total = Fraction(0)
    for coef, triples in _bracket_expansion():
        t = Fraction(coef)
        for tr in triples:
            v = f.coeffs.get(tr, 0)
            if not v:
                t = 0
                break
            t *= v
        total += t
    return total


def s_invariant(f: CubicForm):
    """Degree-4 Aronhold invariant, scaled so that S(STU) = 1."""
    return to_rational(S_NORMALIZATION * s_invariant_raw(f))


def calibrate_s_normalization(reference: CubicForm, value=1) -> Fraction:
    """Scale making ``S(reference) == value``; used to pin S_NORMALIZATION."""
    raw = s_invariant_raw(reference)
    if raw == 0:
        raise CubicError("reference cubic has vanishing raw S-invariant")
    return Fraction(value) / raw


# -- signature / index cone --------------------------------------------------

def charpoly(m: Sequence[Sequence]) -> list[Fraction]:
    """Characteristic polynomial det(xI - M), coefficients from x^n down to x^0.

    Faddeev-LeVerrier over Q.
    """
    n = len(m)
    a = [[Fraction(v) for v in row] for row in m]
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        prod = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += coeffs[-1]
        mk = prod
        am = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        ck = -sum(am[i][i] for i in range(n)) / k
        coeffs.append(ck)
    return coeffs


def _sign_changes(seq: Sequence[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in seq if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def inertia(m: Sequence[Sequence]) -> tuple[int, int, int]:
    """(n_pos, n_neg, n_zero) of a real symmetric rational matrix, exactly.

    All roots of the characteristic polynomial are real, so Descartes' rule
    of signs counts positive and negative eigenvalues exactly.
    """
    n = len(m)
    c = charpoly(m)  # c[k] multiplies x^(n-k)
    zero = 0
    while zero < n and c[n - zero] == 0:
        zero += 1
    pos = _sign_changes(c)
    neg_seq = [ck * (-1) ** (n - k) for k, ck in enumerate(c)]
    neg = _sign_changes(neg_seq)
    return pos, neg, zero


def index_cone_contains(f: CubicForm, y: Sequence) -> bool:
    """True iff f(y) > 0 and Hess f(y) has signature (1, r-1)."""
    p = f.poly()
    y = [to_rational(v) for v in y]
    if p.evaluate(y) <= 0:
        return False
    hess = [[e.evaluate(y) for e in row] for row in hessian_matrix(p, f.r)]
    pos, neg, zero = inertia(hess)
    return zero == 0 and pos == 1 and neg == f.r - 1


def change_of_variables(f: CubicForm, A: Sequence[Sequence]) -> CubicForm:
    """Cubic f'(y') = f(A y'); the tensor picks up A in every slot."""
    r = f.r
    A = [[to_rational(v) for v in row] for row in A]
    if len(A) != r or any(len(row) != r for row in A):
        raise CubicError(f"matrix must be {r}x{r}")
    if det([[Fraction(v) for v in row] for row in A]) == 0:
        raise CubicError("change of variables matrix is singular")
    full = f.tensor()
    # contract one slot at a time: O(r^4)
    t1 = [[[sum(full[i][j][k] * A[k][s] for k in range(r)) for s in range(r)] for j in range(r)] for i in range(r)]
    t2 = [[[sum(t1[i][j][s] * A[j][q] for j in range(r)) for s in range(r)] for q in range(r)] for i in range(r)]
    coeffs = {}
    for p, q, s in itertools.combinations_with_replacement(range(r), 3):
        v = sum(t2[i][q][s] * A[i][p] for i in range(r))
        if v:
            coeffs[(p, q, s)] = v
    return CubicForm(r, coeffs)


# -- JSON ----------------------------------------------------------------------

def cubic_from_json(obj: Mapping) -> CubicForm:
    """Load ``{"r", "mode": "monomials"|"intersection", "terms": [...]}``.

    Monomial terms carry ``"exponents"``; intersection terms carry 1-based
    ``"indices"``.  Values are rational strings or integers.
    """
    try:
        r = int(obj["r"])
        mode = obj["mode"]
        terms = obj["terms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise CubicError(f"malformed cubic JSON: {exc}") from None
    try:
        if mode == "monomials":
            data: dict = {}
            for t in terms:
                e = tuple(int(k) for k in t["exponents"])
                if e in data:
                    raise CubicError(f"duplicate monomial {e}")
                data[e] = parse_rational(t["value"])
            return cubic_from_monomials(r, data)
        if mode == "intersection":
            return cubic_from_intersection(r, [(tuple(t["indices"]), parse_rational(t["value"])) for t in terms])
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, CubicError):
            raise
        raise CubicError(f"malformed cubic term: {exc!r}") from None
    raise CubicError(f"unknown cubic mode {mode!r}")


def cubic_to_json(f: CubicForm, mode: str = "monomials") -> dict:
    if mode == "monomials":
        terms = [{"exponents": list(e), "value": str(v)} for e, v in f.poly().sorted_terms()]
    elif mode == "intersection":
        terms = [{"indices": [i + 1 for i in t], "value": str(v)} for t, v in f.coeffs.items()]
    else:
        raise CubicError(f"unknown cubic mode {mode!r}")
    return {"r": f.r, "mode": mode, "terms": terms}
