"""Face metric, intervals, spheres, cut loci, bigons, four-point spread."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from curvcx import (
    BudgetExceededError,
    UntrustedRegionError,
    bigon_certificate,
    cut_locus,
    distance,
    enumerate_bigons,
    four_point_delta,
    interval,
    spheres,
)
from curvcx.metric import bigon_sweep, face_metric


def ball(X, o, r):
    m = face_metric(X)
    return sorted(f for f, d in m.distances_from(o, limit=r).items())


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------


def test_distance_basics(cube):
    assert distance(cube, 0, 0) == 0
    n = cube.face_neighbors(0)
    assert len(n) == 4
    for g in n:
        assert distance(cube, 0, g) == 1
    far = next(g for g in range(6) if g != 0 and g not in n)
    assert distance(cube, 0, far) == 2  # opposite face


def test_certification_margin_on_flat_grid(flat44):
    # the radius-6 square-grid build certifies distances from its center
    # out to W = 9 further steps
    m = face_metric(flat44)
    assert m.w(flat44.meta["center"]) == 9


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_distance_symmetry_and_triangle(hyp73, data):
    faces = ball(hyp73, hyp73.meta["center"], 4)
    f = data.draw(st.sampled_from(faces))
    g = data.draw(st.sampled_from(faces))
    h = data.draw(st.sampled_from(faces))
    m = face_metric(hyp73)
    assert m.distance(f, g) == m.distance(g, f)
    assert m.distance(f, g) <= m.distance(f, h) + m.distance(h, g)
    assert (m.distance(f, g) == 0) == (f == g)


# ---------------------------------------------------------------------------
# geodesic intervals
# ---------------------------------------------------------------------------


def test_interval_adjacent_pair(cube):
    iv = interval(cube, 0, cube.face_neighbors(0)[0])
    assert iv.length == 1
    assert sorted(iv.members) == sorted([0, cube.face_neighbors(0)[0]])


def test_interval_flat_diagonal_is_full_block(flat44):
    # between opposite corners of a 3x3 block of grid cells, every cell of
    # the block lies on some geodesic
    X = flat44
    o = X.meta["center"]
    m = face_metric(X)
    # find a face at distance 4 whose interval has the diagonal shape:
    # layers 1,2,3,2,1 (corner-to-corner of the block)
    hits = 0
    for g, d in sorted(m.distances_from(o, limit=4).items()):
        if d != 4:
            continue
        iv = interval(X, o, g)
        sizes = [len(l) for l in iv.layers]
        if sizes == [1, 2, 3, 2, 1]:
            hits += 1
            assert len(iv.members) == 9
    assert hits == 4  # one per diagonal direction


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_interval_layers_are_distance_fibers(quint45, data):
    X = quint45
    faces = ball(X, X.meta["center"], 3)
    f = data.draw(st.sampled_from(faces))
    g = data.draw(st.sampled_from(faces))
    m = face_metric(X)
    iv = interval(X, f, g)
    n = iv.length
    assert n == m.distance(f, g)
    assert iv.layers[0] == (f,) and iv.layers[n] == (g,)
    for k, layer in enumerate(iv.layers):
        assert layer  # geodesics exist, no empty fiber
        for h in layer:
            assert m.distance(f, h) == k
            assert m.distance(h, g) == n - k


def test_interval_width_capped_in_hyperbolic(hyp73):
    # any pair at distance 4: no interval layer wider than two faces
    X = hyp73
    o = X.meta["center"]
    m = face_metric(X)
    pairs = [g for g, d in sorted(m.distances_from(o, limit=4).items()) if d == 4]
    assert pairs
    for g in pairs:
        iv = interval(X, o, g)
        assert max(len(l) for l in iv.layers) <= 2


# ---------------------------------------------------------------------------
# spheres and backward neighbors
# ---------------------------------------------------------------------------


def test_cube_sphere_sizes(cube):
    rep = spheres(cube, 0, 2)
    assert rep.sizes == (1, 4, 1)


def test_flat_sphere_sizes(flat44):
    rep = spheres(flat44, flat44.meta["center"], 5)
    assert rep.sizes == (1, 4, 8, 12, 16, 20)


def test_neighbor_split_accounts_for_degree(hyp73):
    rep = spheres(hyp73, hyp73.meta["center"], 4)
    for row in rep.rows:
        if row.complete:
            assert row.forward + row.backward + row.same == hyp73.true_face_degree(row.face)


def test_backward_bound_in_nonpositive_families(hyp73, flat44, prod33, book3):
    for X in (hyp73, flat44, prod33, book3):
        rep = spheres(X, X.meta["center"], 4)
        assert rep.enumeration_certified
        assert rep.max_backward() <= 2


def test_sphere_clauses_on_thick_edges(book3, prod33):
    """Edges in three or more faces: the distance classes of the faces
    around an edge are pinned by any one face's class.

    With d = d(center, f): a neighbor across an edge shared with a face one
    step farther lies one step farther too; across an edge shared between
    two same-distance faces everything else is at the same distance or one
    closer; across an edge shared with a face one step closer everything
    else sits at the same distance.
    """
    for X in (book3, prod33):
        m = face_metric(X)
        o = X.meta["center"]
        dist = m.distances_from(o)
        w = m.w_values()
        checked = 0
        for e in range(len(X.edges)):
            fs = X.edge_faces[e]
            if X.true_edge_degree(e) != len(fs) or len(fs) < 3:
                continue
            if any(dist[f] > w[o] + w[f] + 1 for f in fs):
                continue  # distance not certified out here
            ds = sorted(dist[f] for f in fs)
            n = min(ds)
            rest = ds[1:]
            if ds.count(n) == 1:
                # one face strictly closest -> all others one farther
                assert all(d == n + 1 for d in rest)
            else:
                # two faces share the minimum -> nothing else may be
                # farther either (a farther one would force the rest up)
                assert all(d == n for d in rest)
            checked += 1
        assert checked > 0


# ---------------------------------------------------------------------------
# cut locus
# ---------------------------------------------------------------------------


def test_cut_locus_empty_on_flat_and_hyperbolic(flat44, hyp73):
    for X in (flat44, hyp73):
        assert cut_locus(X, X.meta["center"], 4) == frozenset()


def test_cut_locus_on_cube_is_antipode(cube):
    # R=3 so the whole solid sits strictly inside the scanned ball
    cl = cut_locus(cube, 0, 3)
    assert len(cl) == 1
    (g,) = cl
    assert distance(cube, 0, g) == 2


def test_cut_locus_needs_margin(book3):
    with pytest.raises(UntrustedRegionError):
        cut_locus(book3, book3.meta["center"], 9)


# ---------------------------------------------------------------------------
# bigons
# ---------------------------------------------------------------------------


def test_bigon_certificate_trivial(cube):
    assert bigon_certificate(cube, 0, cube.face_neighbors(0)[0]) == 1


def test_flat_diagonal_antichain(flat44):
    # (0,0) -> (2,2): three faces in the middle layer
    X = flat44
    o = X.meta["center"]
    m = face_metric(X)
    certs = set()
    for g, d in sorted(m.distances_from(o, limit=4).items()):
        if d == 4:
            certs.add(bigon_certificate(X, o, g))
    assert 3 in certs  # negative control: flat grid exceeds the bound 2


def test_flat_corner_bigon(flat44):
    # (0,0) -> (1,1): two staircase geodesics; each stays within one step
    # of the other, although their midpoints are two apart
    X = flat44
    o = X.meta["center"]
    m = face_metric(X)
    seen = False
    for g, d in sorted(m.distances_from(o, limit=2).items()):
        if d != 2:
            continue
        en = enumerate_bigons(X, o, g)
        if en.count == 2:
            assert en.delta_bigon == 1
            assert en.max_index_spread == 2
            seen = True
    assert seen


def test_unique_geodesic_has_zero_spread(hyp73):
    X = hyp73
    o = X.meta["center"]
    m = face_metric(X)
    for g, d in sorted(m.distances_from(o, limit=3).items()):
        en = enumerate_bigons(X, o, g)
        if en.count == 1:
            assert en.delta_bigon == 0
            assert en.max_index_spread == 0
            return
    raise AssertionError("no unique-geodesic pair found")


def test_enumeration_cap(flat44):
    X = flat44
    o = X.meta["center"]
    m = face_metric(X)
    g = next(g for g, d in sorted(m.distances_from(o, limit=4).items()) if d == 4)
    with pytest.raises(BudgetExceededError):
        enumerate_bigons(X, o, g, cap=1)


def test_bigon_sweep_hyperbolic_thin(quint45):
    sw = bigon_sweep(quint45, quint45.meta["center"], ball_radius=4, distance_cap=4)
    assert sw.max_certificate <= 2
    assert sw.delta_upper <= 1
    assert sw.pairs > 500
    assert sw.wide_pairs > 0


def test_bigon_sweep_flat_control(flat44):
    sw = bigon_sweep(flat44, flat44.meta["center"], ball_radius=4, distance_cap=4)
    assert sw.max_certificate == 3
    assert sw.delta_upper == 2


# ---------------------------------------------------------------------------
# four-point spread
# ---------------------------------------------------------------------------


def test_four_point_on_path_is_zero(book3):
    # squares marching down a single page form a path: tree-like, spread 0
    X = book3
    m = face_metric(X)
    o = X.meta["center"]
    dist = m.distances_from(o)
    path = [o]
    seen = {o}
    while len(path) < 5:
        nxt = max(X.face_neighbors(path[-1]), key=lambda h: dist.get(h, -1))
        assert nxt not in seen
        path.append(nxt)
        seen.add(nxt)
    assert four_point_delta(X, path) == 0


def test_four_point_frozen_values(hyp73, flat44):
    o73 = hyp73.meta["center"]
    o44 = flat44.meta["center"]
    assert four_point_delta(hyp73, ball(hyp73, o73, 3)) == 1
    assert four_point_delta(flat44, ball(flat44, o44, 2)) == 2
    assert four_point_delta(flat44, ball(flat44, o44, 3)) == 2
    assert four_point_delta(flat44, ball(flat44, o44, 4)) == 4


def test_four_point_budget(flat44):
    with pytest.raises(BudgetExceededError):
        four_point_delta(flat44, ball(flat44, flat44.meta["center"], 4), budget=10_000)


def test_four_point_small_sample(cube):
    assert four_point_delta(cube, [0, 1, 2]) == Fraction(0)
