"""Face Laplacian on finite balls: Dirichlet spectra, degree-operator
comparison, lower bounds from isoperimetry, finitely supported
eigenfunctions with exact certificates, nearest-neighbor operators, and the
discrete Dirichlet boundary value problem.

Truncation convention: the ball Laplacian keeps each face's full true
degree on the diagonal and simply has no off-diagonal entry toward faces
outside the ball.  This "absorbing boundary" makes every ball eigenvalue an
upper approximation of the infinite complex's bottom eigenvalue, so the
Cheeger-based lower bound must hold on every ball — the direction the
consistency tests exercise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._budget import DEFAULT_SPECTRUM_CAP
from .core import PolygonalComplex
from .errors import BudgetExceededError, ComplexError, UntrustedRegionError
from .isoperimetry import cheeger_at_infinity, cheeger_lower_bounds
from .metric import face_metric

__all__ = [
    "BallMatrix",
    "NearestNeighborOperator",
    "SpectralReport",
    "EigenfunctionCertificate",
    "EigenfunctionCheck",
    "DirichletSolution",
    "laplacian_matrix",
    "spectrum",
    "lambda0_bound",
    "finite_support_eigenfunctions",
    "verify_eigenfunction",
    "wheel_function",
    "solve_dirichlet",
]

_EIG_TOL = 1e-8


def _ball(X: PolygonalComplex, o: int, R: int) -> list[int]:
    m = face_metric(X)
    m._check_face(o)
    if R < 0:
        raise ComplexError("radius must be >= 0")
    dist = m.distances_from(o, limit=R)
    trusted = X.trusted_faces()
    faces = sorted(f for f, d in dist.items() if d <= R)
    for f in faces:
        if f not in trusted:
            raise UntrustedRegionError(
                f"ball of radius {R} around face {o} leaves the trusted "
                f"region (face {f})"
            )
    return faces


@dataclass(frozen=True)
class BallMatrix:
    """A symmetric operator matrix over the faces of a ball."""

    center: int
    radius: int
    faces: tuple[int, ...]
    matrix: np.ndarray
    kind: str


def laplacian_matrix(X: PolygonalComplex, o: int, R: int) -> BallMatrix:
    """The Dirichlet face Laplacian on the ball: diagonal = true face
    degree, off-diagonal −1 per adjacency inside the ball (adjacencies
    leaving the ball keep their diagonal weight but get no entry)."""
    faces = _ball(X, o, R)
    idx = {f: i for i, f in enumerate(faces)}
    n = len(faces)
    M = np.zeros((n, n), dtype=np.float64)
    for f in faces:
        i = idx[f]
        M[i, i] = X.true_face_degree(f)
        for g in X.face_neighbors(f):
            j = idx.get(g)
            if j is not None:
                M[i, j] -= 1.0
    return BallMatrix(center=o, radius=R, faces=tuple(faces), matrix=M, kind="delta")


def degree_matrix(X: PolygonalComplex, o: int, R: int) -> BallMatrix:
    """The degree operator (multiplication by the true face degree) on the
    ball."""
    faces = _ball(X, o, R)
    M = np.diag([float(X.true_face_degree(f)) for f in faces])
    return BallMatrix(center=o, radius=R, faces=tuple(faces), matrix=M, kind="degree")


# ---------------------------------------------------------------------------
# nearest neighbor operators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NearestNeighborOperator:
    """A symmetric-or-not operator whose off-diagonal support is exactly
    the face adjacency: nonzero on every adjacent ordered pair, zero on
    non-adjacent distinct pairs, arbitrary diagonal (a potential)."""

    coefficients: Mapping[tuple[int, int], float]

    def validate(self, X: PolygonalComplex, faces: Sequence[int]) -> None:
        scope = set(faces)
        for (f, g), a in self.coefficients.items():
            if f == g:
                continue
            if f in scope and g in scope:
                if g not in X.face_neighbors(f):
                    raise ComplexError(
                        f"coefficient on non-adjacent pair ({f}, {g})"
                    )
        for f in faces:
            for g in X.face_neighbors(f):
                if g in scope and not self.coefficients.get((f, g)):
                    raise ComplexError(
                        f"adjacent pair ({f}, {g}) has no (nonzero) coefficient"
                    )

    def is_symmetric(self, faces: Sequence[int]) -> bool:
        scope = set(faces)
        for (f, g), a in self.coefficients.items():
            if f in scope and g in scope:
                if not math.isclose(
                    a, self.coefficients.get((g, f), 0.0), rel_tol=0, abs_tol=1e-12
                ):
                    return False
        return True

    def matrix(self, X: PolygonalComplex, o: int, R: int) -> BallMatrix:
        faces = _ball(X, o, R)
        self.validate(X, faces)
        idx = {f: i for i, f in enumerate(faces)}
        n = len(faces)
        M = np.zeros((n, n), dtype=np.float64)
        for (f, g), a in self.coefficients.items():
            i, j = idx.get(f), idx.get(g)
            if i is not None and j is not None:
                M[i, j] = a
        return BallMatrix(center=o, radius=R, faces=tuple(faces), matrix=M, kind="custom")


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralReport:
    center: int
    radius: int
    faces: tuple[int, ...]
    operator: str
    eigenvalues: tuple[float, ...]
    degree_eigenvalues: tuple[int, ...]
    lambda0: float
    lambda0_cheeger_bound: float | None
    ratio_table: tuple[float, ...] | None
    window: tuple[float, float] | None
    window_fraction: float | None
    balance_profile: tuple[Fraction | None, ...]
    strongly_balanced_in_window: bool
    max_residual: float
    convention: str = (
        "truncation keeps true degrees on the diagonal and drops "
        "off-diagonal entries to unbuilt faces, so every ball eigenvalue "
        "upper-approximates the infinite operator's bottom eigenvalue"
    )


def lambda0_bound(m_F: float, alpha_lower: float | Fraction) -> float:
    """``m_F · (1 − sqrt(1 − α²))``: the isoperimetric lower bound for the
    bottom of the Laplacian spectrum.  Monotone increasing in both
    arguments."""
    a = float(alpha_lower)
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {a}")
    return float(m_F) * (1.0 - math.sqrt(max(0.0, 1.0 - a * a)))


def spectrum(
    X: PolygonalComplex,
    o: int,
    R: int,
    operator: str | NearestNeighborOperator = "delta",
    budget: int | None = None,
) -> SpectralReport:
    """Full ascending spectrum of the chosen operator on the ball, with the
    degree-operator comparison table and the isoperimetric window.

    The ratio table pairs the n-th Laplacian eigenvalue with the n-th
    degree eigenvalue.  When the at-infinity degree term is positive, the
    report carries the predicted asymptotic window
    ``[1 − sqrt(1−a²), 1 + sqrt(1−a²)]`` and the fraction of ratio entries
    inside it (reported, never asserted).
    """
    cap = DEFAULT_SPECTRUM_CAP if budget is None else budget
    if isinstance(operator, NearestNeighborOperator):
        faces_probe = _ball(X, o, R)
        if not operator.is_symmetric(faces_probe):
            raise ComplexError(
                "custom nearest-neighbor operator is not symmetric; "
                "refusing to eigensolve"
            )
        bm = operator.matrix(X, o, R)
        kind = "custom"
    elif operator == "delta":
        bm = laplacian_matrix(X, o, R)
        kind = "delta"
    elif operator == "degree":
        bm = degree_matrix(X, o, R)
        kind = "degree"
    else:
        raise ComplexError(f"unknown operator {operator!r}")
    n = len(bm.faces)
    if n > cap:
        raise BudgetExceededError(
            f"ball has {n} faces, over the dense-eigensolver cap {cap}"
        )
    vals, vecs = np.linalg.eigh(bm.matrix)
    resid = float(
        np.abs(bm.matrix @ vecs - vecs * vals[None, :]).max()
    )
    degs = tuple(sorted(X.true_face_degree(f) for f in bm.faces))

    ratio = None
    if kind == "delta":
        ratio = tuple(
            float(v) / d for v, d in zip(vals, degs)
        )

    bound = None
    if kind == "delta":
        b = cheeger_lower_bounds(X, center=o)
        alpha = max(
            [x for x in (b.bound1, b.bound2, b.certificate_bound) if x is not None]
            + [Fraction(0)]
        )
        alpha = min(alpha, Fraction(1))
        bound = lambda0_bound(min(degs), alpha)

    profile = _balance_profile(X, o, R)
    finite_profile = [p for p in profile if p is not None]
    window = None
    fraction = None
    at_inf = [x for x in cheeger_at_infinity(X, center=o) if x is not None]
    if at_inf and ratio is not None:
        a = min(max(at_inf), Fraction(1))
        if a > 0:
            s = math.sqrt(max(0.0, 1.0 - float(a) * float(a)))
            window = (1.0 - s, 1.0 + s)
            eps = 1e-9
            inside = sum(
                1 for r in ratio if window[0] - eps <= r <= window[1] + eps
            )
            fraction = inside / len(ratio)
    return SpectralReport(
        center=o,
        radius=R,
        faces=bm.faces,
        operator=kind,
        eigenvalues=tuple(float(v) for v in vals),
        degree_eigenvalues=degs,
        lambda0=float(vals[0]),
        lambda0_cheeger_bound=bound,
        ratio_table=ratio,
        window=window,
        window_fraction=fraction,
        balance_profile=profile,
        strongly_balanced_in_window=bool(
            finite_profile and max(finite_profile) == 1
        ),
        max_residual=resid,
    )


def _balance_profile(
    X: PolygonalComplex, o: int, R: int
) -> tuple[Fraction | None, ...]:
    """Per-annulus infimum of ``m_E(f)/M_E(f)`` (trusted faces at distance
    in (r, R]); its supremum over r is the finite-window stand-in for the
    balancedness constant."""
    m = face_metric(X)
    trusted = X.trusted_faces()
    dist = m.distances_from(o, limit=R)
    ratios: dict[int, Fraction] = {}
    for f, d in dist.items():
        if d <= R and f in trusted:
            weights = [X.true_edge_degree(e) - 1 for e in X.face_edges[f]]
            ratios[f] = Fraction(min(weights), max(weights))
    out: list[Fraction | None] = []
    for r in range(R):
        vals = [q for f, q in ratios.items() if r < dist[f] <= R]
        out.append(min(vals) if vals else None)
    return tuple(out)


# ---------------------------------------------------------------------------
# finitely supported eigenfunctions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EigenfunctionCertificate:
    """A candidate finitely supported eigenfunction with its halo check.

    ``exact`` certificates carry rational values and eigenvalue and satisfy
    the eigen-equation exactly on support and halo; floating candidates
    carry the numerical residual instead.
    """

    eigenvalue: Fraction | float
    values: Mapping[int, Fraction | float]
    support: tuple[int, ...]
    halo: tuple[int, ...]
    exact: bool
    residual: float


@dataclass(frozen=True)
class EigenfunctionCheck:
    passed: bool
    eigenvalue: Fraction
    residuals: Mapping[int, Fraction]
    support: tuple[int, ...]
    halo: tuple[int, ...]


def verify_eigenfunction(
    X: PolygonalComplex,
    values: Mapping[int, Fraction | int | str],
    eigenvalue: Fraction | int | str,
) -> EigenfunctionCheck:
    """Exact rational check of the eigen-equation on the support and its
    halo.

    The function is extended by zero off its support, so the equation at a
    halo face reduces to its support-neighbor sum vanishing.  Every support
    face must be complete (all true neighbors built) and support and halo
    must be trusted — otherwise unbuilt cells could break the equation
    invisibly.
    """
    lam = Fraction(eigenvalue)
    phi: dict[int, Fraction] = {}
    for f, v in values.items():
        fv = Fraction(v)
        if fv:
            phi[int(f)] = fv
    if not phi:
        raise ComplexError("the zero function is a trivial eigenfunction of everything")
    trusted = X.trusted_faces()
    support = sorted(phi)
    halo: set[int] = set()
    for f in support:
        if not 0 <= f < len(X.faces):
            raise ComplexError(f"face id {f} out of range")
        if not X.face_complete(f):
            raise UntrustedRegionError(
                f"support face {f} is incomplete: unseen neighbors could "
                "break the eigen-equation"
            )
        if f not in trusted:
            raise UntrustedRegionError(f"support face {f} is untrusted")
        for g in X.face_neighbors(f):
            if g not in phi:
                halo.add(g)
    for g in sorted(halo):
        if g not in trusted:
            raise UntrustedRegionError(f"halo face {g} is untrusted")
    residuals: dict[int, Fraction] = {}
    ok = True
    for f in sorted(set(support) | halo):
        val = phi.get(f, Fraction(0))
        acc = X.true_face_degree(f) * val
        for g in X.face_neighbors(f):
            acc -= phi.get(g, Fraction(0))
        res = acc - lam * val
        residuals[f] = res
        if res:
            ok = False
    return EigenfunctionCheck(
        passed=ok,
        eigenvalue=lam,
        residuals=residuals,
        support=tuple(support),
        halo=tuple(sorted(halo)),
    )


def wheel_function(X: PolygonalComplex, v: int) -> dict[int, Fraction]:
    """The alternating ±1 function on the faces around an even-degree
    vertex, in star order."""
    incident = sorted(set(X.vertex_faces[v]))
    # order the star by walking shared edges at v
    edges_of = {}
    for f in incident:
        cyc = X.faces[f]
        k = cyc.index(v)
        e1 = X.edge_id(cyc[k - 1], v)
        e2 = X.edge_id(v, cyc[(k + 1) % len(cyc)])
        edges_of[f] = (e1, e2)
    by_edge: dict[int, list[int]] = {}
    for f, (e1, e2) in edges_of.items():
        by_edge.setdefault(e1, []).append(f)
        by_edge.setdefault(e2, []).append(f)
    if any(len(fs) != 2 for fs in by_edge.values()):
        raise ComplexError(f"the star of vertex {v} is not a closed wheel")
    if len(incident) % 2:
        raise ComplexError(
            f"vertex {v} has odd degree {len(incident)}; no alternating "
            "function exists"
        )
    start = incident[0]
    order = [start]
    prev_edge = edges_of[start][0]
    while True:
        cur = order[-1]
        e_next = (
            edges_of[cur][1] if edges_of[cur][0] == prev_edge else edges_of[cur][0]
        )
        nxt = [f for f in by_edge[e_next] if f != cur][0]
        if nxt == start:
            break
        order.append(nxt)
        prev_edge = e_next
    if len(order) != len(incident):
        raise ComplexError(f"the star of vertex {v} is not a single wheel")
    return {f: Fraction(1 if i % 2 == 0 else -1) for i, f in enumerate(order)}


def finite_support_eigenfunctions(
    X: PolygonalComplex, o: int, R: int
) -> list[EigenfunctionCertificate]:
    """All eigenfunctions supported inside the ball of radius R that
    satisfy the eigen-equation everywhere (equivalently: on the support
    ball and its halo, which lies one step further out).

    Method: diagonalize the Dirichlet matrix on the support ball, then for
    each eigenvalue cluster intersect the eigenspace with the kernel of
    the halo-sum conditions (one per face adjacent to the support).  Each
    surviving direction is echelonized, rationalized, and re-verified in
    exact arithmetic; candidates whose rationalization fails are returned
    as floating certificates with their numerical residual.  An empty list
    is a meaningful result: no finitely supported eigenfunction exists at
    this scale.
    """
    support_faces = _ball(X, o, R)
    for f in support_faces:
        if not X.face_complete(f):
            raise UntrustedRegionError(
                f"support face {f} is incomplete; the halo is not fully built"
            )
    trusted = X.trusted_faces()
    sset = set(support_faces)
    halo = sorted(
        {
            g
            for f in support_faces
            for g in X.face_neighbors(f)
            if g not in sset
        }
    )
    for g in halo:
        if g not in trusted:
            raise UntrustedRegionError(f"halo face {g} is untrusted")
    idx = {f: i for i, f in enumerate(support_faces)}
    n = len(support_faces)
    M = np.zeros((n, n))
    for f in support_faces:
        i = idx[f]
        M[i, i] = X.true_face_degree(f)
        for g in X.face_neighbors(f):
            j = idx.get(g)
            if j is not None:
                M[i, j] -= 1.0
    H = np.zeros((len(halo), n))
    for hi, g in enumerate(halo):
        for f in X.face_neighbors(g):
            j = idx.get(f)
            if j is not None:
                H[hi, j] = 1.0
    vals, vecs = np.linalg.eigh(M)

    out: list[EigenfunctionCertificate] = []
    i = 0
    while i < n:
        j = i + 1
        while j < n and vals[j] - vals[i] <= _EIG_TOL * max(1.0, abs(vals[i])):
            j += 1
        V = vecs[:, i:j]
        lam = float(np.mean(vals[i:j]))
        i = j
        B = H @ V if len(halo) else np.zeros((0, V.shape[1]))
        if B.shape[0]:
            u, s, vt = np.linalg.svd(B, full_matrices=True)
            k = V.shape[1]
            rank = int(np.sum(s > _EIG_TOL * max(1.0, s[0] if len(s) else 0.0)))
            null = vt[rank:].T
        else:
            null = np.eye(V.shape[1])
        if null.shape[1] == 0:
            continue
        C = V @ null  # columns: candidate eigenfunctions
        for vec in _echelonize(C.T):
            out.append(_certify(X, support_faces, halo, vec, lam, M, H))
    out.sort(key=lambda c: float(c.eigenvalue))
    return out


def _echelonize(rows: np.ndarray) -> list[np.ndarray]:
    """Numeric reduced echelon form of the row space: canonical, sparser
    basis vectors with pivot entries 1."""
    A = np.array(rows, dtype=np.float64)
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        p = r + int(np.argmax(np.abs(A[r:, c])))
        if abs(A[p, c]) < 1e-9:
            continue
        A[[r, p]] = A[[p, r]]
        A[r] = A[r] / A[r, c]
        for q in range(m):
            if q != r and abs(A[q, c]) > 1e-12:
                A[q] -= A[q, c] * A[r]
        r += 1
    return [A[t] for t in range(r)]


def _certify(
    X: PolygonalComplex,
    support_faces: Sequence[int],
    halo: Sequence[int],
    vec: np.ndarray,
    lam: float,
    M: np.ndarray,
    H: np.ndarray,
) -> EigenfunctionCertificate:
    support = [f for f, x in zip(support_faces, vec) if abs(x) > 1e-9]
    lam_r = Fraction(lam).limit_denominator(10_000)
    vals_r = {
        f: Fraction(float(x)).limit_denominator(1_000_000)
        for f, x in zip(support_faces, vec)
        if abs(x) > 1e-9
    }
    if abs(float(lam_r) - lam) < 1e-7:
        try:
            check = verify_eigenfunction(X, vals_r, lam_r)
        except UntrustedRegionError:
            check = None
        if check is not None and check.passed:
            return EigenfunctionCertificate(
                eigenvalue=lam_r,
                values=vals_r,
                support=check.support,
                halo=check.halo,
                exact=True,
                residual=0.0,
            )
    r1 = float(np.abs(M @ vec - lam * vec).max())
    r2 = float(np.abs(H @ vec).max()) if len(halo) else 0.0
    return EigenfunctionCertificate(
        eigenvalue=lam,
        values={f: float(x) for f, x in zip(support_faces, vec) if abs(x) > 1e-9},
        support=tuple(support),
        halo=tuple(halo),
        exact=False,
        residual=max(r1, r2),
    )


# ---------------------------------------------------------------------------
# Dirichlet problem
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DirichletSolution:
    values: Mapping[int, float]
    interior: tuple[int, ...]
    boundary: tuple[int, ...]
    residual: float

    def max_principle_holds(self) -> bool:
        if not self.interior:
            return True
        lo = min(self.values[f] for f in self.boundary)
        hi = max(self.values[f] for f in self.boundary)
        eps = 1e-9 * max(1.0, abs(lo), abs(hi))
        return all(
            lo - eps <= self.values[f] <= hi + eps for f in self.interior
        )


def solve_dirichlet(
    X: PolygonalComplex,
    o: int,
    R: int,
    boundary_values: Mapping[int, float],
) -> DirichletSolution:
    """Solve the discrete Dirichlet problem on the ball: prescribed values
    on the boundary, mean-value property at every interior face.

    Interior faces are those with all true neighbors inside the ball;
    every other ball face is boundary and must carry a prescribed value.
    The interior system is an irreducibly diagonally dominant M-matrix
    (every interior component of a ball reaches the boundary), hence
    nonsingular — a singular solve would indicate corrupted input.
    """
    faces = _ball(X, o, R)
    fset = set(faces)
    interior = []
    boundary = []
    for f in faces:
        nbrs = X.face_neighbors(f)
        if (
            X.face_complete(f)
            and len(nbrs) == X.true_face_degree(f)
            and all(g in fset for g in nbrs)
        ):
            interior.append(f)
        else:
            boundary.append(f)
    missing = [f for f in boundary if f not in boundary_values]
    if missing:
        raise ComplexError(
            f"boundary values missing for {len(missing)} faces "
            f"(e.g. face {missing[0]})"
        )
    bset = set(boundary)
    unknown = sorted(f for f in boundary_values if f not in bset)
    if unknown:
        raise ComplexError(
            f"boundary value given for non-boundary face {unknown[0]}"
        )
    idx = {f: i for i, f in enumerate(interior)}
    n = len(interior)
    A = np.zeros((n, n))
    rhs = np.zeros(n)
    for f in interior:
        i = idx[f]
        nbrs = X.face_neighbors(f)
        A[i, i] = len(nbrs)
        for g in nbrs:
            j = idx.get(g)
            if j is not None:
                A[i, j] -= 1.0
            else:
                rhs[i] += float(boundary_values[g])
    sol = np.linalg.solve(A, rhs) if n else np.zeros(0)
    values = {f: float(boundary_values[f]) for f in boundary}
    for f, x in zip(interior, sol):
        values[f] = float(x)
    residual = 0.0
    for f in interior:
        nbrs = X.face_neighbors(f)
        res = len(nbrs) * values[f] - sum(values[g] for g in nbrs)
        residual = max(residual, abs(res))
    if residual > 1e-10:
        raise ComplexError(
            f"Dirichlet solve residual {residual:.2e} above 1e-10"
        )
    return DirichletSolution(
        values=values,
        interior=tuple(interior),
        boundary=tuple(boundary),
        residual=residual,
    )
