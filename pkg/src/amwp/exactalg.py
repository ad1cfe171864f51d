"""Exact sparse multivariate polynomials and rational functions over Q.

Coefficients are Python rationals: ``int`` when integral, ``fractions.Fraction``
otherwise.  Every value is immutable after construction.

Term order is graded lexicographic throughout: higher total degree first,
ties broken lexicographically with ``y1 > y2 > ... > yn``.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd as igcd
from math import isqrt
from numbers import Rational
from typing import Iterable, Mapping, Sequence

Exp = tuple[int, ...]


class DimensionError(ValueError):
    """Operands live in polynomial rings with different numbers of variables."""


class PoleError(ZeroDivisionError):
    """A denominator vanishes at the evaluation point."""


def to_rational(c) -> int | Fraction:
    """Canonical exact coefficient: int if integral, else a reduced Fraction."""
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return to_rational(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return to_rational(Fraction(c.strip()))
    raise TypeError(f"not an exact rational: {c!r}")


def grlex_key(e: Exp):
    return (sum(e), e)


def _heap_key(e: Exp):
    return (-sum(e), tuple(-k for k in e))


class MPoly:
    """Sparse polynomial in ``nvars`` variables with exact rational coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients.  Use the
    arithmetic operators for ring operations; scalars (int/Fraction) are
    promoted to constants automatically.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exp, object] | None = None, *, _clean: bool = False):
        if nvars < 0:
            raise DimensionError("nvars must be non-negative")
        self.nvars = nvars
        self._hash = None
        if _clean:
            self.terms = terms  # type: ignore[assignment]
            return
        out: dict[Exp, int | Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != nvars:
                raise DimensionError(f"exponent {e} does not have length {nvars}")
            if any(k < 0 for k in e):
                raise ValueError(f"negative exponent in {e}")
            c = to_rational(c)
            if c:
                c = out.get(e, 0) + c
                if c:
                    out[e] = to_rational(c)
                else:
                    out.pop(e, None)
        self.terms = out

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars, {}, _clean=True)

    @classmethod
    def const(cls, c, nvars: int) -> "MPoly":
        c = to_rational(c)
        return cls(nvars, {(0,) * nvars: c} if c else {}, _clean=True)

    @classmethod
    def var(cls, i: int, nvars: int) -> "MPoly":
        """The variable ``y_{i+1}`` (0-based index ``i``)."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, _clean=True)

    @classmethod
    def variables(cls, nvars: int) -> list["MPoly"]:
        return [cls.var(i, nvars) for i in range(nvars)]

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "MPoly":
        return cls(len(exps), {tuple(exps): coeff})

    # -- basic queries ------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.nvars, 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading_exp(self) -> Exp:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=grlex_key)

    def leading_coeff(self):
        return self.terms[self.leading_exp()] if self.terms else 0

    def sorted_terms(self) -> list[tuple[Exp, int | Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def coeff(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), 0)

    # -- ring operations ----------------------------------------------
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        return MPoly.const(other, self.nvars)

    def __add__(self, other):
        if isinstance(other, RatFn):
            return NotImplemented
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return MPoly(self.nvars, _fix(out), _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        if isinstance(other, RatFn):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, RatFn):
            return NotImplemented
        if not isinstance(other, MPoly):
            c = to_rational(other)
            if not c:
                return MPoly.zero(self.nvars)
            return MPoly(self.nvars, {e: to_rational(v * c) for e, v in self.terms.items()}, _clean=True)
        other = self._coerce(other)
        return MPoly(self.nvars, _mul_terms(self.terms, other.terms), _clean=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (MPoly, RatFn)):
            return RatFn(self, other) if isinstance(other, MPoly) else RatFn(self) / other
        c = to_rational(other)
        if not c:
            raise ZeroDivisionError("division of polynomial by zero")
        return self * (Fraction(1) / Fraction(c))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, RatFn):
            return other == self
        if isinstance(other, (int, Fraction)):
            return self.terms == MPoly.const(other, self.nvars).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- calculus and evaluation --------------------------------------
    def diff(self, i: int) -> "MPoly":
        """Formal partial derivative with respect to variable ``i`` (0-based)."""
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return MPoly(self.nvars, out, _clean=True)

    def __call__(self, *point):
        return self.evaluate(point[0] if len(point) == 1 and isinstance(point[0], (list, tuple)) else point)

    def evaluate(self, point: Sequence):
        """Evaluate at ``point``.  Exact for rational input; any number type works."""
        if len(point) != self.nvars:
            raise DimensionError(f"expected {self.nvars} coordinates, got {len(point)}")
        pows: list[dict[int, object]] = [{0: 1} for _ in range(self.nvars)]
        total = 0
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    cache = pows[i]
                    v = cache.get(k)
                    if v is None:
                        v = cache[k] = point[i] ** k
                    t = t * v
            total = total + t
        return to_rational(total) if isinstance(total, (int, Fraction)) else total

    def float_evaluator(self):
        """A fast float/complex evaluator ``fn(point) -> number``."""
        items = [(float(c), e) for e, c in self.terms.items()]
        nv = self.nvars

        def fn(point):
            total = 0.0
            for c, e in items:
                t = c
                for i in range(nv):
                    k = e[i]
                    if k:
                        t *= point[i] ** k
                total += t
            return total

        return fn

    def compose(self, subs: Sequence["MPoly"]) -> "MPoly":
        """Substitute ``y_i -> subs[i]`` (all substitutes share one ring)."""
        if len(subs) != self.nvars:
            raise DimensionError(f"expected {self.nvars} substitutes, got {len(subs)}")
        if self.nvars == 0:
            return MPoly.const(self.constant_value() if self.terms else 0, 0)
        nv = subs[0].nvars
        cache: list[dict[int, MPoly]] = [{0: MPoly.const(1, nv), 1: s} for s in subs]

        def power(i, k):
            if k not in cache[i]:
                cache[i][k] = power(i, k - 1) * subs[i]
            return cache[i][k]

        acc: dict[Exp, object] = {}
        for e, c in self.terms.items():
            t = MPoly.const(c, nv)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            for te, tc in t.terms.items():
                acc[te] = acc.get(te, 0) + tc
        return MPoly(nv, acc)

    def embed(self, nvars: int, positions: Sequence[int] | None = None) -> "MPoly":
        """Re-express in a ring with ``nvars`` variables; variable i goes to ``positions[i]``."""
        positions = list(range(self.nvars)) if positions is None else list(positions)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for i, k in enumerate(e):
                ne[positions[i]] += k
            out[tuple(ne)] = c
        return MPoly(nvars, out, _clean=True)

    # -- content ------------------------------------------------------
    def integer_content(self) -> tuple[Fraction, "MPoly"]:
        """Return ``(c, q)`` with ``self = c*q``, ``q`` integral, primitive, positive lc."""
        if not self.terms:
            return Fraction(0), self
        den = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                d = c.denominator
                den = den * d // igcd(den, d)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = igcd(g, v)
        if ints[self.leading_exp()] < 0:
            g = -g
        q = {e: v // g for e, v in ints.items()}
        return Fraction(g, den), MPoly(self.nvars, q, _clean=True)

    # -- rendering ----------------------------------------------------
    def to_str(self, names: Sequence[str] | None = None) -> str:
        """Canonical text: descending grlex terms, coefficients as p/q."""
        names = list(names) if names else [f"y{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            if idx == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MPoly({self.nvars}, {self.to_str()!r})"


def _fix(d: dict) -> dict:
    for e, c in d.items():
        if isinstance(c, Fraction) and c.denominator == 1:
            d[e] = c.numerator
    return d


def _mul_terms(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict[Exp, object] = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            out[e] = get(e, 0) + ca * cb
    return _fix({e: c for e, c in out.items() if c})


def poly_arith(a: MPoly, b: MPoly, op: str) -> MPoly:
    """Exact ``a op b`` for ``op`` in {"add", "sub", "mul"}."""
    if a.nvars != b.nvars:
        raise DimensionError(f"nvars mismatch: {a.nvars} vs {b.nvars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p: MPoly, i: int) -> MPoly:
    """Derivative with respect to ``y_i`` using the 1-based index of the notation."""
    if not 1 <= i <= p.nvars:
        raise IndexError(f"variable index {i} out of range 1..{p.nvars}")
    return p.diff(i - 1)


# ---------------------------------------------------------------------------
# integer-polynomial kernels (dict representation) used by the gcd
# ---------------------------------------------------------------------------

def _icontent(d: dict) -> int:
    g = 0
    for v in d.values():
        g = igcd(g, v)
        if g == 1:
            break
    return g


def _exact_div(f: dict, g: dict) -> dict | None:
    """Quotient of integer polynomials if ``g`` divides ``f`` in Z[y], else None."""
    if not g:
        raise ZeroDivisionError
    if not f:
        return {}
    lg = max(g, key=grlex_key)
    lcg = g[lg]
    if len(g) == 1:
        q = {}
        for e, c in f.items():
            if any(x < y for x, y in zip(e, lg)) or c % lcg:
                return None
            q[tuple(x - y for x, y in zip(e, lg))] = c // lcg
        return q
    rem = dict(f)
    heap = [_heap_key(e) for e in rem]
    heapq.heapify(heap)
    q = {}
    gitems = [(e, c) for e, c in g.items()]
    while rem:
        while True:
            hk = heapq.heappop(heap)
            e = tuple(-k for k in hk[1])
            if e in rem:
                break
        c = rem[e]
        if any(x < y for x, y in zip(e, lg)) or c % lcg:
            return None
        m = tuple(x - y for x, y in zip(e, lg))
        qc = c // lcg
        q[m] = qc
        for ge, gc in gitems:
            te = tuple(x + y for x, y in zip(ge, m))
            v = rem.get(te, 0) - qc * gc
            if v:
                if te not in rem:
                    heapq.heappush(heap, _heap_key(te))
                rem[te] = v
            else:
                rem.pop(te, None)
        # the popped key of e is gone; if e re-appeared it was re-pushed above
    return q


def _eval_last(f: dict, x: int) -> dict:
    out: dict = {}
    for e, c in f.items():
        k = e[:-1]
        out[k] = out.get(k, 0) + c * x ** e[-1]
    return {e: c for e, c in out.items() if c}


def _interp(h: dict, x: int) -> dict:
    out = {}
    half = x // 2
    for e, c in h.items():
        k = 0
        while c:
            r = c % x
            if r > half:
                r -= x
            if r:
                out[e + (k,)] = r
            c = (c - r) // x
            k += 1
    return out


def _heugcd(f: dict, g: dict, n: int) -> dict | None:
    """Heuristic gcd (GCDHEU) of nonzero integer polynomials in ``n`` variables.

    Returns the full gcd (integer content included, positive grlex lc), or
    None when the heuristic gives up.
    """
    cf, cg = _icontent(f), _icontent(g)
    c = igcd(cf, cg)
    if n == 0:
        return {(): c}
    if cf != 1:
        f = {e: v // cf for e, v in f.items()}
    if cg != 1:
        g = {e: v // cg for e, v in g.items()}
    zero = (0,) * n
    if (len(f) == 1 and zero in f) or (len(g) == 1 and zero in g):
        return {zero: c}
    fn = max(abs(v) for v in f.values())
    gn = max(abs(v) for v in g.values())
    # x > 2 min(|f|, |g|) + 1 makes the divisibility test below a proof
    x = 2 * min(fn, gn) + 2
    for _ in range(6):
        ff = _eval_last(f, x)
        gg = _eval_last(g, x)
        if ff and gg:
            h = _heugcd(ff, gg, n - 1)
            if h is not None:
                hh = _interp(h, x)
                if hh:
                    ch = _icontent(hh)
                    lead = hh[max(hh, key=grlex_key)]
                    if lead < 0:
                        ch = -ch
                    hh = {e: v // ch for e, v in hh.items()}
                    if _exact_div(f, hh) is not None and _exact_div(g, hh) is not None:
                        return {e: v * c for e, v in hh.items()}
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    return None


# -- fallback: primitive PRS over Z[y_1..y_{n-1}][y_n] -----------------------

def _to_univ(f: dict) -> dict[int, dict]:
    out: dict[int, dict] = {}
    for e, c in f.items():
        out.setdefault(e[-1], {})[e[:-1]] = c
    return out


def _from_univ(u: dict[int, dict]) -> dict:
    out = {}
    for k, cd in u.items():
        for e, c in cd.items():
            out[e + (k,)] = c
    return out


def _dmul(a: dict, b: dict) -> dict:
    return _mul_terms(a, b) if a and b else {}


def _dsub(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) - c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _univ_content(u: dict[int, dict], n: int) -> dict:
    g: dict | None = None
    for cd in u.values():
        g = cd if g is None else _gcd_int(g, cd, n - 1)
        if len(g) == 1 and not any(next(iter(g))) and abs(next(iter(g.values()))) == 1:
            break
    return g


def _prem(a: dict[int, dict], b: dict[int, dict]) -> dict[int, dict]:
    db = max(b)
    lb = b[db]
    r = {k: dict(v) for k, v in a.items()}
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        shift = dr - db
        nr: dict[int, dict] = {}
        for k, cd in r.items():
            if k == dr:
                continue
            v = _dmul(cd, lb)
            if v:
                nr[k] = v
        for k, cd in b.items():
            if k == db:
                continue
            kk = k + shift
            v = _dsub(nr.get(kk, {}), _dmul(cd, lr))
            if v:
                nr[kk] = v
            else:
                nr.pop(kk, None)
        r = nr
    return r


def _prs_gcd(f: dict, g: dict, n: int) -> dict:
    """Primitive PRS gcd of integer polynomials, main variable ``y_n``."""
    uf, ug = _to_univ(f), _to_univ(g)
    if max(uf) == 0 or max(ug) == 0:
        # one is free of the main variable: gcd divides every main-variable coefficient
        cf = _univ_content(uf, n)
        cg = _univ_content(ug, n)
        h = _gcd_int(cf, cg, n - 1)
        return {e + (0,): c for e, c in h.items()}
    cf = _univ_content(uf, n)
    cg = _univ_content(ug, n)
    cont = _gcd_int(cf, cg, n - 1)
    a = {k: _exact_div(v, cf) for k, v in uf.items()}
    b = {k: _exact_div(v, cg) for k, v in ug.items()}
    if max(a) < max(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        if not r:
            break
        cr = _univ_content(r, n)
        r = {k: _exact_div(v, cr) for k, v in r.items()}
        a, b = b, r
        if max(b) == 0:
            # primitive remainder free of the main variable: coprime primitive parts
            a = {0: {(0,) * (n - 1): 1}}
            break
    prim = _from_univ(a)
    cp = _icontent(prim)
    lead = prim[max(prim, key=grlex_key)]
    if lead < 0:
        cp = -cp
    prim = {e: v // cp for e, v in prim.items()}
    return _dmul({e + (0,): c for e, c in cont.items()}, prim)


def _gcd_int(f: dict, g: dict, n: int) -> dict:
    """Full gcd of integer polynomials in n variables (dict form)."""
    if not f:
        return _normalize_sign(g)
    if not g:
        return _normalize_sign(f)
    if n == 0:
        return {(): igcd(f[()], g[()])}
    h = _heugcd(f, g, n)
    if h is None:
        h = _prs_gcd(f, g, n)
    return h


def _normalize_sign(f: dict) -> dict:
    if f and f[max(f, key=grlex_key)] < 0:
        return {e: -c for e, c in f.items()}
    return dict(f)


def poly_gcd(a: MPoly, b: MPoly) -> MPoly:
    """Greatest common divisor, normalized primitive over Z with positive lc.

    ``gcd(0, 0)`` is 0; the gcd of any nonzero constant with anything is 1.
    """
    if a.nvars != b.nvars:
        raise DimensionError(f"nvars mismatch: {a.nvars} vs {b.nvars}")
    n = a.nvars
    if a.is_zero() and b.is_zero():
        return MPoly.zero(n)
    if a.is_zero():
        return b.integer_content()[1]
    if b.is_zero():
        return a.integer_content()[1]
    pa = a.integer_content()[1].terms
    pb = b.integer_content()[1].terms
    # monomial content
    ma = tuple(min(e[i] for e in pa) for i in range(n))
    mb = tuple(min(e[i] for e in pb) for i in range(n))
    mono = tuple(min(x, y) for x, y in zip(ma, mb))
    if any(ma):
        pa = {tuple(x - y for x, y in zip(e, ma)): c for e, c in pa.items()}
    if any(mb):
        pb = {tuple(x - y for x, y in zip(e, mb)): c for e, c in pb.items()}
    zero = (0,) * n
    if (len(pa) == 1 and zero in pa) or (len(pb) == 1 and zero in pb):
        core = {zero: 1}
    elif pa == pb:
        core = pa
    else:
        core = _gcd_int(pa, pb, n)
        cc = _icontent(core)
        core = {e: c // cc for e, c in core.items()}
    out = {tuple(x + y for x, y in zip(e, mono)): c for e, c in core.items()}
    return MPoly(n, _normalize_sign(out), _clean=True)


def exact_quotient(a: MPoly, b: MPoly) -> MPoly:
    """``a / b`` when ``b`` divides ``a`` exactly; raises ValueError otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ca, pa = a.integer_content()
    cb, pb = b.integer_content()
    if a.is_zero():
        return MPoly.zero(a.nvars)
    q = _exact_div(pa.terms, pb.terms)
    if q is None:
        raise ValueError("polynomial division is not exact")
    return MPoly(a.nvars, q, _clean=True) * (ca / cb)


def divides(b: MPoly, a: MPoly) -> bool:
    try:
        exact_quotient(a, b)
    except ValueError:
        return False
    return True


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFn:
    """Reduced quotient ``num/den`` of polynomials.

    Canonical form: num and den have integer coefficients whose joint content
    is 1, gcd(num, den) = 1, and the grlex leading coefficient of den is
    positive.  Structural equality therefore decides equality of values.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduced: bool = False):
        if not isinstance(num, MPoly):
            if den is None:
                raise TypeError("a bare scalar needs an explicit ring; use RatFn.const")
            num = MPoly.const(num, den.nvars)
        if den is None:
            den = MPoly.const(1, num.nvars)
        elif not isinstance(den, MPoly):
            den = MPoly.const(den, num.nvars)
        if num.nvars != den.nvars:
            raise DimensionError(f"nvars mismatch: {num.nvars} vs {den.nvars}")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            num, den = _normalize_pair(num, den)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c, nvars: int) -> "RatFn":
        return cls(MPoly.const(c, nvars))

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        return to_rational(Fraction(self.num.constant_value()) / Fraction(self.den.constant_value()))

    def _coerce(self, other) -> "RatFn":
        if isinstance(other, RatFn):
            if other.nvars != self.nvars:
                raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return RatFn(other)
        return RatFn.const(other, self.nvars)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RatFn(self.num + o.num, self.den)
        g = poly_gcd(self.den, o.den)
        bd = exact_quotient(self.den, g)
        dd = exact_quotient(o.den, g)
        return RatFn(self.num * dd + o.num * bd, bd * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n1 = exact_quotient(self.num, g1) if not g1.is_zero() else self.num
        d2 = exact_quotient(o.den, g1) if not g1.is_zero() else o.den
        n2 = exact_quotient(o.num, g2) if not g2.is_zero() else o.num
        d1 = exact_quotient(self.den, g2) if not g2.is_zero() else self.den
        return RatFn(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RatFn":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFn(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFn(self.num ** k, self.den ** k, reduced=True)

    def __eq__(self, other):
        if isinstance(other, (MPoly, int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, RatFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def diff(self, i: int) -> "RatFn":
        """Partial derivative with respect to variable ``i`` (0-based)."""
        n, d = self.num, self.den
        if d.is_constant():
            return RatFn(n.diff(i), d)
        return RatFn(n.diff(i) * d - n * d.diff(i), d * d)

    def evaluate(self, point: Sequence):
        dv = self.den.evaluate(point)
        if dv == 0:
            raise PoleError(f"denominator vanishes at {tuple(point)}")
        nv = self.num.evaluate(point)
        if isinstance(nv, (int, Fraction)) and isinstance(dv, (int, Fraction)):
            return to_rational(Fraction(nv) / Fraction(dv))
        return nv / dv

    def compose(self, subs: Sequence[MPoly]) -> "RatFn":
        return RatFn(self.num.compose(subs), self.den.compose(subs))

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if self.den == MPoly.const(1, self.nvars):
            return self.num.to_str(names)
        return f"({self.num.to_str(names)})/({self.den.to_str(names)})"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RatFn({self.to_str()!r})"


def _normalize_pair(num: MPoly, den: MPoly) -> tuple[MPoly, MPoly]:
    nv = num.nvars
    if num.is_zero():
        return MPoly.zero(nv), MPoly.const(1, nv)
    if not den.is_constant() and not num.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = exact_quotient(num, g)
            den = exact_quotient(den, g)
    cn, pn = num.integer_content()
    cd, pd = den.integer_content()
    ratio = Fraction(cn) / Fraction(cd)  # den lc sign is folded into cd
    return pn * ratio.numerator, pd * ratio.denominator


def ratfn_from_factored(num: MPoly, den: MPoly, factors: Sequence[MPoly]) -> RatFn:
    """Canonical ``num/den`` when every irreducible factor of den divides some polynomial in ``factors``.

    Only gcds against the (small) factors are taken, which is much cheaper
    than one gcd of two large polynomials and gives the same reduced form.
    """
    nv = num.nvars
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return RatFn(MPoly.zero(nv), MPoly.const(1, nv), reduced=True)
    factors = [phi for phi in factors if not phi.is_constant()]
    changed = True
    while changed and not den.is_constant():
        changed = False
        for phi in factors:
            g = poly_gcd(num, phi)
            if g.is_constant():
                continue
            g = poly_gcd(g, den)
            if g.is_constant():
                continue
            num = exact_quotient(num, g)
            den = exact_quotient(den, g)
            changed = True
    cn, pn = num.integer_content()
    cd, pd = den.integer_content()
    ratio = Fraction(cn) / Fraction(cd)
    return RatFn(pn * ratio.numerator, pd * ratio.denominator, reduced=True)


def ratfn_normalize(num: MPoly, den: MPoly) -> RatFn:
    """gcd-reduced, canonically scaled quotient ``num/den``."""
    return RatFn(num, den)


def evaluate(p: MPoly | RatFn, y: Sequence):
    """Exact value of a polynomial or rational function at ``y``."""
    y = [to_rational(v) if isinstance(v, (int, Fraction, str)) else v for v in y]
    return p.evaluate(y)


def det(mat: Sequence[Sequence]):
    """Determinant over any commutative ring by cofactor expansion.

    Meant for the small symbolic matrices used here; pointwise work on larger
    matrices goes through :func:`rational_det`.
    """
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    if n == 3:
        a, b, c = mat
        return (a[0] * (b[1] * c[2] - b[2] * c[1])
                - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]))
    total = None
    for j in range(n):
        if _is_zero(mat[0][j]):
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return mat[0][0] * 0
    return total


def _is_zero(v) -> bool:
    if isinstance(v, (MPoly, RatFn)):
        return v.is_zero()
    return v == 0


def adjugate(mat: Sequence[Sequence]) -> list[list]:
    """Classical adjoint (transpose of the cofactor matrix)."""
    n = len(mat)
    if n == 1:
        one = mat[0][0] * 0 + 1
        return [[one]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(mat) if k != i]
            c = det(minor)
            adj[j][i] = -c if (i + j) % 2 else c
    return adj


def solve_rational(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``a x = b`` exactly over Q by Gauss-Jordan elimination."""
    n = len(a)
    m = [[Fraction(v) for v in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [v / pv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                fac = m[r][col]
                m[r] = [x - fac * y for x, y in zip(m[r], m[col])]
    return [to_rational(m[i][n]) for i in range(n)]


def rational_det(a: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a rational matrix by elimination."""
    n = len(a)
    m = [[Fraction(v) for v in row] for row in a]
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            d = -d
        pv = m[col][col]
        d *= pv
        for r in range(col + 1, n):
            if m[r][col] != 0:
                fac = m[r][col] / pv
                m[r] = [x - fac * y for x, y in zip(m[r], m[col])]
    return d


def rational_inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(a)
    cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        cols.append(solve_rational(a, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def parse_rational(s: str | int | Fraction) -> int | Fraction:
    return to_rational(s)


def poly_from_terms(nvars: int, items: Iterable[tuple[Sequence[int], object]]) -> MPoly:
    acc: dict[Exp, object] = {}
    for e, c in items:
        e = tuple(e)
        acc[e] = acc.get(e, 0) + to_rational(c)
    return MPoly(nvars, acc)
