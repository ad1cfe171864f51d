import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from amwp import catalog
from amwp.toric import (
    LatticeSimplex,
    PolytopeError,
    barycentric,
    edge_interior_points,
    face_interiority,
    lattice_points,
    load_polytope,
    polar_dual,
    polytope_from_json,
    polytope_report,
)

DELTA = catalog.DELTA_P11128


def _points_by_inequalities(P):
    # independent oracle: P is the polar of its polar, {u : <u, w> >= -1 for w in P*}
    dual = polar_dual(P)
    lo = [min(v[i] for v in P.verts) for i in range(4)]
    hi = [max(v[i] for v in P.verts) for i in range(4)]
    return sorted(u for u in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
                  if all(sum(a * b for a, b in zip(u, w)) >= -1 for w in dual.verts))


def test_polar_dual_vertices():
    assert polar_dual(DELTA) == LatticeSimplex(catalog.DELTA_P11128_POLAR_VERTICES)
    # each dual vertex pairs to -1 with the four primal vertices it is opposite to
    dual = polar_dual(DELTA)
    for k, u in enumerate(dual.verts):
        for j, v in enumerate(DELTA.verts):
            if j != k:
                assert sum(a * b for a, b in zip(u, v)) == -1


def test_polar_lattice_points():
    polar = polar_dual(DELTA)
    pts = lattice_points(polar)
    assert len(pts) == 11
    listed = set(catalog.DELTA_P11128_POLAR_VERTICES) | set(catalog.DELTA_P11128_POLAR_EXTRA_POINTS.values()) | {(0, 0, 0, 0)}
    assert set(pts) == listed
    assert sorted(pts) == _points_by_inequalities(polar)


def test_published_convex_combinations():
    labelled = {k + 1: v for k, v in enumerate(catalog.DELTA_P11128_POLAR_VERTICES)}
    labelled.update(catalog.DELTA_P11128_POLAR_EXTRA_POINTS)
    for k, combo in catalog.DELTA_P11128_POLAR_COMBINATIONS.items():
        assert sum(combo.values()) == 1
        pt = tuple(sum(w * labelled[j][i] for j, w in combo.items()) for i in range(4))
        assert pt == labelled[k]


def test_face_of_v6():
    polar = polar_dual(DELTA)
    info = face_interiority(polar, catalog.DELTA_P11128_POLAR_EXTRA_POINTS[6])
    assert info.support == (2, 3, 4)
    assert info.codim == 2


def test_faces_of_remaining_points():
    polar = polar_dual(DELTA)
    extra = catalog.DELTA_P11128_POLAR_EXTRA_POINTS
    assert face_interiority(polar, extra[7]).support == (3, 4)
    assert face_interiority(polar, extra[8]).codim == 1
    assert face_interiority(polar, (0, 0, 0, 0)).codim == 0
    with pytest.raises(PolytopeError):
        face_interiority(polar, (5, 5, 5, 5))


def test_edge_interior_points():
    assert edge_interior_points(DELTA, 0, 1) == 0
    # v4 - v5 = (0, 0, 0, 24)
    assert edge_interior_points(DELTA, 3, 4) == 23
    with pytest.raises(PolytopeError):
        edge_interior_points(DELTA, 2, 2)


def test_barycentric_sums_to_one_and_reconstructs():
    u = (Fraction(1, 3), 0, -1, 2)
    lam = barycentric(DELTA, u)
    assert sum(lam) == 1
    assert tuple(sum(l * v[i] for l, v in zip(lam, DELTA.verts)) for i in range(4)) == u


def test_invalid_simplices():
    with pytest.raises(PolytopeError):
        LatticeSimplex(((0, 0, 0, 0), (1, 0, 0, 0), (2, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)))
    with pytest.raises(PolytopeError):
        LatticeSimplex(((0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)))
    with pytest.raises(PolytopeError):
        LatticeSimplex(((Fraction(1, 2), 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    corner = LatticeSimplex(((0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    with pytest.raises(PolytopeError):
        polar_dual(corner)
    # origin interior but the dual is not integral
    fat = LatticeSimplex(((2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2), (-2, -2, -2, -2)))
    with pytest.raises(PolytopeError):
        polar_dual(fat)


@given(st.permutations(range(5)))
def test_dual_is_involutive_and_order_free(perm):
    P = LatticeSimplex(tuple(DELTA.verts[k] for k in perm))
    assert polar_dual(polar_dual(P)) == DELTA


def test_json_load_and_report(tmp_path):
    path = tmp_path / "delta.json"
    path.write_text(json.dumps({"vertices": [list(v) for v in DELTA.verts]}))
    P = load_polytope(path)
    assert P == DELTA
    rep = polytope_report(polar_dual(P))
    assert len(rep["lattice_points"]) == 11
    assert rep["codim1_interior_points"] == [[-2, -1, 0, 0], [-1, -1, 0, 0], [-1, 0, 0, 0]]
    v6 = next(f for f in rep["faces"] if f["point"] == [-3, -2, 0, 0])
    assert v6["support"] == [3, 4, 5] and v6["codim"] == 2
    with pytest.raises(PolytopeError):
        polytope_from_json({"verts": []})
