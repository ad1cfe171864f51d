"""Named cubic forms and polytopes with known values.

``expected`` values carry a provenance tag: "published" for values printed
with the source example, "derived" for values computed here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .cubic import CubicForm, change_of_variables, cubic_from_intersection, cubic_from_monomials, cubic_to_json
from .exactalg import MPoly, RatFn, parse_rational
from .identities import type2_cubic
from .toric import LatticeSimplex, polar_dual


class UnknownEntry(KeyError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    r: int
    cubic: CubicForm | None
    poly: MPoly | None
    kahler_cone: tuple = ()
    notes: str = ""
    expected: dict = field(default_factory=dict)
    basis_change: tuple | None = None
    polytope: LatticeSimplex | None = None

    @property
    def is_symbolic(self) -> bool:
        """True when the polynomial carries parameter variables after y1..yr."""
        return self.poly is not None and self.poly.nvars > self.r

    def to_json(self) -> dict:
        out = {"name": self.name, "notes": self.notes,
               "expected": {k: {"value": str(v), "source": src} for k, (v, src) in self.expected.items()}}
        if self.cubic is not None:
            out["cubic"] = cubic_to_json(self.cubic)
            out["kahler_cone"] = list(self.kahler_cone)
        elif self.poly is not None:
            names = [f"y{i + 1}" for i in range(self.r)] + ["lam", "mu"][: self.poly.nvars - self.r]
            out["polynomial"] = self.poly.to_str(names)
        if self.basis_change is not None:
            out["basis_change"] = [[str(v) for v in row] for row in self.basis_change]
        if self.polytope is not None:
            out["vertices"] = [list(v) for v in self.polytope.verts]
        return out


_POSITIVE_ORTHANT = ("y1 >= 0", "y2 >= 0", "y3 >= 0")

STU = cubic_from_monomials(3, {(3, 0, 0): 8, (2, 0, 1): 12, (2, 1, 0): 6, (1, 0, 2): 6, (1, 1, 1): 6})

V16_11158 = cubic_from_monomials(3, {
    (3, 0, 0): 50, (2, 1, 0): 30, (1, 2, 0): 6, (2, 0, 1): 240, (1, 1, 1): 96,
    (0, 2, 1): 9, (1, 0, 2): 384, (0, 1, 2): 75, (0, 0, 3): 203,
})

V12_11136 = cubic_from_monomials(3, {
    (3, 0, 0): 18, (2, 1, 0): 18, (2, 0, 1): 54, (1, 2, 0): 6, (1, 1, 1): 36,
    (1, 0, 2): 54, (0, 2, 1): 3, (0, 1, 2): 9, (0, 0, 3): 9,
})

# intersection numbers in the basis (E, D, L)
STU_EDL = cubic_from_intersection(3, {(1, 1, 1): 8, (1, 1, 3): -2, (1, 2, 2): -2, (1, 2, 3): 1})
# columns express J1 = E + 2D + 4L, J2 = L, J3 = D + 2L in (E, D, L)
EDL_TO_J = ((1, 0, 0), (2, 0, 1), (4, 1, 2))


def _stu_printed_detg() -> RatFn:
    y1, y2, y3 = MPoly.variables(3)
    num = (y1 * y2 + y1 * y3 * 2 + y3 * y3 + y2 * y3) * 27
    den = y1 * y1 * 64 * (y2 * y3 * 3 + y1 * y1 * 4 + y1 * y2 * 3 + y1 * y3 * 6 + y3 * y3 * 3) ** 3
    return RatFn(num, den)


def _stu_printed_scalar() -> RatFn:
    y1, y2, y3 = MPoly.variables(3)
    bracket = (
        y1 ** 6 * 16
        - y3 ** 3 * (y2 + y3) ** 3 * 9
        + y1 ** 5 * (y2 + y3 * 2) * 24
        - y1 * y3 ** 2 * (y2 + y3) ** 2 * (y2 + y3 * 2) * 27
        + y1 ** 4 * (y2 ** 2 + y2 * y3 * 6 + y3 ** 2 * 6) * 12
        - y1 ** 3 * (y2 ** 3 * 3 + y2 ** 2 * y3 * 10 + y2 * y3 ** 2 * 12 + y3 ** 3 * 8) * 3
        - y1 ** 2 * y3 * (y2 ** 3 * 9 + y2 ** 2 * y3 * 41 + y2 * y3 ** 2 * 64 + y3 ** 3 * 32) * 3
    )
    den = (y3 * (y2 + y3) + y1 * (y2 + y3 * 2)) ** 3 * 3
    return RatFn(bracket * 2, den)


STU_PRINTED_DETG = _stu_printed_detg()
STU_PRINTED_SCALAR = _stu_printed_scalar()

DELTA_P11128 = LatticeSimplex((
    (1, -1, -1, -1),
    (-1, 2, -1, -1),
    (-1, -1, 11, -1),
    (-1, -1, -1, 23),
    (-1, -1, -1, -1),
))

DELTA_P11128_POLAR_VERTICES = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-12, -8, -2, -1))
DELTA_P11128_POLAR_EXTRA_POINTS = {
    6: (-3, -2, 0, 0),
    7: (-6, -4, -1, 0),
    8: (-1, -1, 0, 0),
    9: (-2, -1, 0, 0),
    10: (-1, 0, 0, 0),
}
# the published convex combinations of v_k* in terms of earlier points (1-based labels)
DELTA_P11128_POLAR_COMBINATIONS = {
    6: {3: Fraction(1, 2), 4: Fraction(1, 4), 5: Fraction(1, 4)},
    7: {4: Fraction(1, 2), 5: Fraction(1, 2)},
    8: {1: Fraction(1, 2), 3: Fraction(1, 4), 4: Fraction(1, 8), 5: Fraction(1, 8)},
    9: {2: Fraction(1, 3), 3: Fraction(1, 3), 4: Fraction(1, 6), 5: Fraction(1, 6)},
    10: {9: Fraction(1, 2), 2: Fraction(1, 2)},
}


def weierstrass_symbolic() -> MPoly:
    """y2^2 y3 - y1^3 - lam y1 y3^2 - mu y3^3 in variables (y1, y2, y3, lam, mu)."""
    y1, y2, y3, lam, mu = MPoly.variables(5)
    return y2 * y2 * y3 - y1 ** 3 - lam * y1 * y3 * y3 - mu * y3 ** 3


def weierstrass(lam, mu) -> CubicForm:
    lam, mu = parse_rational(lam), parse_rational(mu)
    return cubic_from_monomials(3, {(0, 2, 1): 1, (3, 0, 0): -1, (1, 0, 2): -lam, (0, 0, 3): -mu})


def type2(a, b, c) -> CubicForm:
    return cubic_from_monomials(3, type2_cubic(a, b, c).terms)


def _entries() -> dict[str, CatalogEntry]:
    return {
        "STU": CatalogEntry(
            "STU", 3, STU, STU.poly(), _POSITIVE_ORTHANT,
            "Weierstrass fibration over F2 in the Kahler-cone generators J1 = E + 2D + 4L, J2 = L, J3 = D + 2L.",
            {"S": (1, "published"), "scalar(1,1,1)": (Fraction(-1378, 375), "derived")},
        ),
        "STU_EDL": CatalogEntry(
            "STU_EDL", 3, STU_EDL, STU_EDL.poly(), (),
            "Same threefold in the basis (E, D, L): E^3 = 8, E^2 L = -2, E D^2 = -2, E D L = 1. "
            "basis_change columns give J1, J2, J3 in (E, D, L); substituting reproduces STU.",
            {"S": (1, "derived")},
            basis_change=EDL_TO_J,
        ),
        "V16_11158": CatalogEntry(
            "V16_11158", 3, V16_11158, V16_11158.poly(), _POSITIVE_ORTHANT,
            "Resolution of a degree-16 hypersurface in P(1,1,1,5,8). Type II face y2 = 0 (Hessian vanishes there).",
            {"S": (0, "published"), "type_II_face": ("y2 = 0", "published")},
        ),
        "V12_11136": CatalogEntry(
            "V12_11136", 3, V12_11136, V12_11136.poly(), _POSITIVE_ORTHANT,
            "Resolution of a degree-12 hypersurface in P(1,1,1,3,6). Type II face y2 = 0. "
            "EMENDED: the last term is printed as 9 y3^2, which is not cubic; stored as 9 y3^3.",
            {"S": (0, "derived"), "type_II_face": ("y2 = 0", "published")},
        ),
        "weierstrass": CatalogEntry(
            "weierstrass", 3, None, weierstrass_symbolic(), (),
            "Weierstrass normal form y2^2 y3 - y1^3 - lam y1 y3^2 - mu y3^3 with lam, mu as extra "
            "polynomial variables (4th and 5th). Use weierstrass(lam,mu) for numeric parameters.",
        ),
        "type2": CatalogEntry(
            "type2", 3, None, None, (),
            "Family y1^3 + y2 (a y2^2 + 3b y2 y3 + 3c y3^2) with a Type II face; use type2(a,b,c).",
            {"S": (0, "published")},
        ),
        "delta_P11128": CatalogEntry(
            "delta_P11128", 0, None, None, (),
            "Simplex whose toric variety is P(1,1,2,8,12).",
            polytope=DELTA_P11128,
        ),
        "delta_P11128_polar": CatalogEntry(
            "delta_P11128_polar", 0, None, None, (),
            "Polar dual of delta_P11128; 11 lattice points including the origin.",
            {"lattice_points": (11, "published")},
            polytope=polar_dual(DELTA_P11128),
        ),
    }


_CATALOG = _entries()

_CALL = re.compile(r"^\s*(weierstrass|type2)\s*\((.*)\)\s*$")


def names() -> list[str]:
    return sorted(_CATALOG)


def get(name: str) -> CatalogEntry:
    """Look up an entry; ``weierstrass(l,m)`` and ``type2(a,b,c)`` build family members."""
    if name in _CATALOG:
        return _CATALOG[name]
    m = _CALL.match(name)
    if m:
        family, args = m.group(1), [a.strip() for a in m.group(2).split(",")]
        try:
            vals = [parse_rational(a) for a in args]
        except (ValueError, ZeroDivisionError):
            raise UnknownEntry(f"bad parameters in {name!r}") from None
        if family == "weierstrass" and len(vals) == 2:
            f = weierstrass(*vals)
            return CatalogEntry(name, 3, f, f.poly(), (), _CATALOG["weierstrass"].notes)
        if family == "type2" and len(vals) == 3:
            f = type2(*vals)
            return CatalogEntry(name, 3, f, f.poly(), (), _CATALOG["type2"].notes, {"S": (0, "published")})
    raise UnknownEntry(f"unknown catalog entry {name!r}; known: {', '.join(names())}")


def stu_from_edl() -> CubicForm:
    return change_of_variables(STU_EDL, EDL_TO_J)


__all__ = [
    "CatalogEntry",
    "DELTA_P11128",
    "DELTA_P11128_POLAR_COMBINATIONS",
    "DELTA_P11128_POLAR_EXTRA_POINTS",
    "DELTA_P11128_POLAR_VERTICES",
    "STU",
    "STU_EDL",
    "STU_PRINTED_DETG",
    "STU_PRINTED_SCALAR",
    "UnknownEntry",
    "V12_11136",
    "V16_11158",
    "get",
    "names",
    "stu_from_edl",
    "type2",
    "weierstrass",
    "weierstrass_symbolic",
]
