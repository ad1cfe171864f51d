"""Lattice 4-simplices: polar duals, lattice points, faces containing a point."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactalg import rational_det, solve_rational, to_rational

DIM = 4


class PolytopeError(ValueError):
    pass


def _affine_rank_ok(verts) -> bool:
    v0 = verts[0]
    diffs = [[Fraction(a - b) for a, b in zip(v, v0)] for v in verts[1:]]
    return rational_det(diffs) != 0


@dataclass(frozen=True)
class LatticeSimplex:
    """A 4-simplex with integer vertices (affinely independent)."""

    verts: tuple

    def __post_init__(self):
        verts = tuple(tuple(int(c) if Fraction(c).denominator == 1 else Fraction(c) for c in v) for v in self.verts)
        if len(verts) != DIM + 1 or any(len(v) != DIM for v in verts):
            raise PolytopeError(f"a {DIM}-simplex needs {DIM + 1} vertices in dimension {DIM}")
        if not all(isinstance(c, int) for v in verts for c in v):
            raise PolytopeError("vertices must be integral")
        if not _affine_rank_ok(verts):
            raise PolytopeError("vertices are affinely dependent")
        object.__setattr__(self, "verts", verts)

    @property
    def dim(self) -> int:
        return DIM

    def contains_origin_in_interior(self) -> bool:
        return all(c > 0 for c in barycentric(self, (0,) * DIM))

    def __eq__(self, other):
        if not isinstance(other, LatticeSimplex):
            return NotImplemented
        return sorted(self.verts) == sorted(other.verts)

    def __hash__(self):
        return hash(tuple(sorted(self.verts)))


def barycentric(P: LatticeSimplex, u: Sequence) -> list:
    """Unique affine coordinates (lambda_1..lambda_5), sum 1, with sum lambda_k v_k = u."""
    u = [to_rational(c) for c in u]
    if len(u) != DIM:
        raise PolytopeError(f"point must have {DIM} coordinates")
    # rows: coordinates, then the affine constraint
    a = [[Fraction(P.verts[k][i]) for k in range(DIM + 1)] for i in range(DIM)]
    a.append([Fraction(1)] * (DIM + 1))
    sol = solve_rational(a, [Fraction(c) for c in u] + [Fraction(1)])
    return [to_rational(c) for c in sol]


def polar_dual(P: LatticeSimplex) -> LatticeSimplex:
    """Vertices of {u : <u, v> >= -1 for all v in P}.

    Dual vertex k solves <u, v_j> = -1 for the four vertices j != k, so the
    k-th dual vertex is the one opposite to facet k of the dual.
    """
    if not P.contains_origin_in_interior():
        raise PolytopeError("the polar dual needs the origin in the interior")
    out = []
    for k in range(DIM + 1):
        rows = [[Fraction(c) for c in P.verts[j]] for j in range(DIM + 1) if j != k]
        u = solve_rational(rows, [Fraction(-1)] * DIM)
        if any(c.denominator != 1 for c in u):
            raise PolytopeError(f"dual vertex {tuple(str(c) for c in u)} is not integral: polytope is not reflexive")
        out.append(tuple(int(c) for c in u))
    return LatticeSimplex(tuple(out))


def lattice_points(P: LatticeSimplex) -> list[tuple[int, ...]]:
    """All integer points of P, in lexicographic order."""
    lo = [min(v[i] for v in P.verts) for i in range(DIM)]
    hi = [max(v[i] for v in P.verts) for i in range(DIM)]
    pts = []
    for u in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if all(c >= 0 for c in barycentric(P, u)):
            pts.append(tuple(u))
    return pts


@dataclass(frozen=True)
class FaceInfo:
    support: tuple  # 0-based vertex indices with positive coordinate
    interior: bool
    codim: int


def face_interiority(P: LatticeSimplex, u: Sequence) -> FaceInfo:
    """The face of P whose relative interior contains u."""
    lam = barycentric(P, u)
    if any(c < 0 for c in lam):
        raise PolytopeError(f"point {tuple(u)} is outside the simplex")
    support = tuple(k for k, c in enumerate(lam) if c > 0)
    # for a simplex every point is interior to the face spanned by its support
    return FaceInfo(support, True, DIM - (len(support) - 1))


def edge_interior_points(P: LatticeSimplex, i: int, j: int) -> int:
    """Lattice points strictly inside the edge v_i v_j (0-based indices)."""
    if i == j:
        raise PolytopeError("an edge needs two distinct vertices")
    return segment_interior_points(P.verts[i], P.verts[j])


def segment_interior_points(a: Sequence[int], b: Sequence[int]) -> int:
    return math.gcd(*(int(x) - int(y) for x, y in zip(a, b))) - 1


def polytope_from_json(obj) -> LatticeSimplex:
    try:
        verts = obj["vertices"]
    except (KeyError, TypeError):
        raise PolytopeError("polytope JSON needs a 'vertices' list") from None
    return LatticeSimplex(tuple(tuple(v) for v in verts))


def load_polytope(path) -> LatticeSimplex:
    with open(path, encoding="utf-8") as fh:
        return polytope_from_json(json.load(fh))


def polytope_report(P: LatticeSimplex) -> dict:
    """Vertices, lattice points and the face carrying each point."""
    pts = lattice_points(P)
    faces = []
    for u in pts:
        fi = face_interiority(P, u)
        faces.append({
            "point": list(u),
            "barycentric": [str(c) for c in barycentric(P, u)],
            "support": [k + 1 for k in fi.support],
            "codim": fi.codim,
        })
    codim1 = [f["point"] for f in faces if f["codim"] == 1]
    return {
        "vertices": [list(v) for v in P.verts],
        "lattice_points": [list(u) for u in pts],
        "faces": faces,
        "codim1_interior_points": codim1,
    }


__all__ = [
    "FaceInfo",
    "LatticeSimplex",
    "PolytopeError",
    "barycentric",
    "edge_interior_points",
    "face_interiority",
    "lattice_points",
    "load_polytope",
    "polar_dual",
    "polytope_from_json",
    "polytope_report",
    "segment_interior_points",
]
