"""Truncated Laplacian spectra, eigenfunction certificates, harmonic solves."""

import math
from fractions import Fraction

import numpy as np
import pytest

from curvcx import (
    BudgetExceededError,
    ComplexError,
    NearestNeighborOperator,
    finite_support_eigenfunctions,
    lambda0_bound,
    laplacian_matrix,
    solve_dirichlet,
    spectrum,
    verify_eigenfunction,
    wheel_function,
)
from curvcx.metric import face_metric


# ---------------------------------------------------------------------------
# exact small spectra
# ---------------------------------------------------------------------------


def test_cube_spectrum(cube):
    rep = spectrum(cube, 0, 3)
    want = [0.0, 4.0, 4.0, 4.0, 6.0, 6.0]
    assert len(rep.eigenvalues) == 6
    for got, expect in zip(rep.eigenvalues, want):
        assert abs(got - expect) <= 1e-10
    assert rep.max_residual <= 1e-10
    assert "true degrees on the diagonal" in rep.convention


def test_single_face_operator(cube):
    bm = laplacian_matrix(cube, 0, 0)
    assert bm.faces == (0,)
    assert bm.matrix[0, 0] == cube.true_face_degree(0)


# ---------------------------------------------------------------------------
# eigenvalue bounds and monotonicity
# ---------------------------------------------------------------------------


def test_lambda0_bound_values():
    assert lambda0_bound(7, 0) == 0
    assert abs(lambda0_bound(7, 1) - 7) <= 1e-12
    want = 7 - 4 * math.sqrt(3)
    assert abs(lambda0_bound(7, Fraction(1, 7)) - want) <= 1e-12
    with pytest.raises(ValueError):
        lambda0_bound(7, 1.5)
    with pytest.raises(ValueError):
        lambda0_bound(7, -0.1)


def test_heptagonal_lambda0_chain(hyp73):
    o = hyp73.meta["center"]
    frozen = {2: 1.844088, 3: 1.308160, 4: 1.041362}
    floor = 7 - 4 * math.sqrt(3)
    values = {}
    for R, expect in frozen.items():
        rep = spectrum(hyp73, o, R)
        values[R] = rep.lambda0
        assert abs(rep.lambda0 - expect) <= 1e-5
        assert rep.lambda0 >= floor - 1e-9
        assert rep.lambda0_cheeger_bound is not None
        assert abs(rep.lambda0_cheeger_bound - floor) <= 1e-9
    assert values[2] >= values[3] >= values[4]


def test_lambda0_monotone_in_radius(flat44):
    o = flat44.meta["center"]
    vals = [spectrum(flat44, o, R).lambda0 for R in range(1, 5)]
    for a, b in zip(vals, vals[1:]):
        assert a >= b - 1e-9
    assert all(v > 0 for v in vals)  # Dirichlet boundary keeps it positive


def test_lambda0_dominates_cheeger_bound(prod44):
    rep = spectrum(prod44, prod44.meta["center"], 3)
    # alpha >= 1/12 for this family
    assert rep.lambda0 >= lambda0_bound(12, Fraction(1, 12)) - 1e-9


def test_spectrum_psd(quint45):
    rep = spectrum(quint45, quint45.meta["center"], 3)
    assert rep.eigenvalues[0] > 0
    assert rep.eigenvalues == tuple(sorted(rep.eigenvalues))


def test_spectrum_budget(hyp73):
    with pytest.raises(BudgetExceededError):
        spectrum(hyp73, hyp73.meta["center"], 4, budget=10)


def test_window_and_balance(hyp73):
    rep = spectrum(hyp73, hyp73.meta["center"], 3)
    assert rep.balance_profile and all(b == 1 for b in rep.balance_profile)
    lo, hi = rep.window
    s = math.sqrt(1 - (1 / 7) ** 2)
    assert abs(lo - (1 - s)) <= 1e-9
    assert abs(hi - (1 + s)) <= 1e-9
    assert rep.window_fraction == 1.0


def test_window_absent_without_positive_profile(flat44):
    rep = spectrum(flat44, flat44.meta["center"], 3)
    assert rep.window is None
    assert rep.window_fraction is None


# ---------------------------------------------------------------------------
# custom nearest-neighbor operators
# ---------------------------------------------------------------------------


def test_custom_operator_roundtrip(cube):
    coeff = {}
    for f in range(6):
        coeff[(f, f)] = float(cube.true_face_degree(f))
        for g in cube.face_neighbors(f):
            coeff[(f, g)] = -1.0
    op = NearestNeighborOperator(coeff)
    assert op.is_symmetric(range(6))
    rep = spectrum(cube, 0, 3, operator=op)
    assert abs(rep.eigenvalues[0]) <= 1e-10  # same as the builtin delta


def test_custom_operator_missing_coefficient(cube):
    op = NearestNeighborOperator({(0, 0): 1.0})
    with pytest.raises(ComplexError):
        spectrum(cube, 0, 2, operator=op)


def test_custom_operator_non_adjacent_pair(cube):
    far = next(g for g in range(1, 6) if g not in cube.face_neighbors(0))
    coeff = {(f, g): -1.0 for f in range(6) for g in cube.face_neighbors(f)}
    coeff[(0, far)] = 5.0
    with pytest.raises(ComplexError):
        spectrum(cube, 0, 3, operator=NearestNeighborOperator(coeff))


# ---------------------------------------------------------------------------
# finitely supported eigenfunctions
# ---------------------------------------------------------------------------


def test_no_finite_support_in_flat_or_hyperbolic(flat44, hyp73):
    for X in (flat44, hyp73):
        assert finite_support_eigenfunctions(X, X.meta["center"], 2) == []


def test_wheel_certificate(sig4):
    X = sig4
    out = finite_support_eigenfunctions(X, X.meta["center"], 4)
    assert out, "expected at least one certificate"
    for cert in out:
        assert cert.exact
        assert cert.eigenvalue == 6
        assert cert.residual == 0
        check = verify_eigenfunction(X, cert.values, cert.eigenvalue)
        assert check.passed


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_wheel_function_verifies(n):
    from curvcx.generators import bipartite_squares

    # the wheel reaches n dual steps around its hub, so build n + 2 to keep
    # the support and its halo inside the trusted ball
    X = bipartite_squares(n, radius=n + 2)
    hub = next(
        v
        for v in X.faces[X.meta["center"]]
        if X.vertex_complete(v) and len(X.vertex_faces[v]) == 2 * n
    )
    values = wheel_function(X, hub)
    assert len(values) == 2 * n
    assert sorted(set(values.values())) == [-1, 1]
    check = verify_eigenfunction(X, values, 6)
    assert check.passed, check.residuals


def test_verify_rejects_zero_function(sig4):
    with pytest.raises(ComplexError):
        verify_eigenfunction(sig4, {0: 0}, 6)


def test_verify_rejects_wrong_eigenvalue(sig4):
    X = sig4
    hub = next(
        v
        for v in range(len(X.vertex_faces))
        if X.vertex_complete(v) and len(X.vertex_faces[v]) == 8
    )
    values = wheel_function(X, hub)
    assert not verify_eigenfunction(X, values, 5).passed


# ---------------------------------------------------------------------------
# harmonic functions on a ball
# ---------------------------------------------------------------------------


def boundary_split(X, o, R):
    m = face_metric(X)
    dist = m.distances_from(o, limit=R)
    in_ball = set(dist)
    interior, boundary = [], []
    for f in sorted(in_ball):
        if X.face_complete(f) and all(g in in_ball for g in X.face_neighbors(f)):
            interior.append(f)
        else:
            boundary.append(f)
    return interior, boundary


def test_dirichlet_solution_properties(flat44):
    X = flat44
    o = X.meta["center"]
    interior, boundary = boundary_split(X, o, 3)
    m = face_metric(X)
    data = {f: float(m.distance(o, f) % 2) for f in boundary}
    sol = solve_dirichlet(X, o, 3, data)
    assert sol.residual <= 1e-10
    assert sol.max_principle_holds()
    assert set(sol.interior) == set(interior)
    lo, hi = min(data.values()), max(data.values())
    for f in sol.interior:
        assert lo - 1e-12 <= sol.values[f] <= hi + 1e-12


def test_dirichlet_linearity(quint45):
    X = quint45
    o = X.meta["center"]
    _, boundary = boundary_split(X, o, 3)
    rng = np.random.default_rng(7)
    b1 = {f: float(x) for f, x in zip(boundary, rng.normal(size=len(boundary)))}
    b2 = {f: float(x) for f, x in zip(boundary, rng.normal(size=len(boundary)))}
    mix = {f: b1[f] + 2.5 * b2[f] for f in boundary}
    s1 = solve_dirichlet(X, o, 3, b1)
    s2 = solve_dirichlet(X, o, 3, b2)
    sm = solve_dirichlet(X, o, 3, mix)
    for f in s1.interior:
        assert abs(sm.values[f] - (s1.values[f] + 2.5 * s2.values[f])) <= 1e-9


def test_dirichlet_rejects_interior_keys(flat44):
    X = flat44
    o = X.meta["center"]
    interior, boundary = boundary_split(X, o, 3)
    data = {f: 1.0 for f in boundary}
    data[interior[0]] = 2.0
    with pytest.raises(ComplexError):
        solve_dirichlet(X, o, 3, data)


def test_dirichlet_constant_data_gives_constant(book3):
    X = book3
    o = X.meta["center"]
    _, boundary = boundary_split(X, o, 3)
    sol = solve_dirichlet(X, o, 3, {f: 3.25 for f in boundary})
    for f in sol.interior:
        assert abs(sol.values[f] - 3.25) <= 1e-10
