"""Exact combinatorial curvature: corner and face curvature relative to a
planar subcomplex, Gauss-Bonnet sums, triangle-group polygon classification,
and the finite-versus-infinite dichotomy evidence.

Everything in this module is exact rational arithmetic (:class:`Fraction`);
curvature signs drive theorem dispatch elsewhere, so floating point is
deliberately absent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .core import Apartment, PolygonalComplex, apartment_interior_vertices
from .errors import ComplexError, UntrustedRegionError
from .metric import face_metric

__all__ = [
    "CurvatureReport",
    "CoxeterClass",
    "MyersEvidence",
    "corner_curvature",
    "face_curvature",
    "gauss_bonnet_sum",
    "curvature_report",
    "coxeter_classify",
    "myers_evidence",
]

HALF = Fraction(1, 2)


def _apartment_faces(
    X: PolygonalComplex, apartment: Apartment | Iterable[int] | None
) -> frozenset[int]:
    if apartment is None:
        return frozenset(range(len(X.faces)))
    if isinstance(apartment, Apartment):
        return apartment.faces
    return frozenset(apartment)


def _local_degree(
    X: PolygonalComplex,
    v: int,
    ap_faces: frozenset[int],
    whole: bool,
) -> int:
    """Vertex degree within the subcomplex, insisting the local star is
    closed (a single cycle of faces).  Raises when truncation leaves the
    star open — the degree would then be an undercount."""
    if whole:
        if not X.vertex_complete(v):
            raise UntrustedRegionError(
                f"vertex {v} is incomplete: its degree is an undercount"
            )
        return X.true_vertex_degree(v)
    incident = [f for f in X.vertex_faces[v] if f in ap_faces]
    # walk the star through shared edges at v: it must close into one cycle
    adj: dict[int, list[int]] = {}
    for f in incident:
        cyc = X.faces[f]
        k = cyc.index(v)
        e1 = X.edge_id(cyc[k - 1], v)
        e2 = X.edge_id(v, cyc[(k + 1) % len(cyc)])
        adj.setdefault(e1, []).append(e2)
        adj.setdefault(e2, []).append(e1)
    if not adj or any(len(n) != 2 for n in adj.values()):
        raise UntrustedRegionError(
            f"vertex {v} is not interior to the apartment: its local star "
            "does not close"
        )
    start = next(iter(adj))
    seen = {start}
    prev, cur = None, start
    while True:
        nxt = [e for e in adj[cur] if e != prev]
        step = nxt[0] if nxt[0] != prev else nxt[1]
        if step == start:
            break
        if step in seen:
            raise UntrustedRegionError(
                f"vertex {v} has a degenerate star within the apartment"
            )
        seen.add(step)
        prev, cur = cur, step
    if len(seen) != len(adj):
        raise UntrustedRegionError(
            f"vertex {v} has a disconnected star within the apartment"
        )
    return len(incident)


def corner_curvature(
    X: PolygonalComplex,
    v: int,
    f: int,
    apartment: Apartment | Iterable[int] | None = None,
) -> Fraction:
    """Curvature of the corner ``(v, f)`` relative to a planar subcomplex:
    ``1/deg(v) - 1/2 + 1/|boundary of f|``, with the vertex degree measured
    inside the apartment (or in the whole complex when none is given)."""
    ap_faces = _apartment_faces(X, apartment)
    if f not in ap_faces:
        raise ComplexError(f"face {f} is not in the apartment")
    if not 0 <= f < len(X.faces):
        raise ComplexError(f"face id {f} out of range")
    if v not in X.faces[f]:
        raise ComplexError(f"vertex {v} is not a corner of face {f}")
    deg = _local_degree(X, v, ap_faces, whole=apartment is None)
    return Fraction(1, deg) - HALF + Fraction(1, len(X.faces[f]))


def face_curvature(
    X: PolygonalComplex,
    f: int,
    apartment: Apartment | Iterable[int] | None = None,
) -> Fraction:
    """Sum of the corner curvatures of ``f``; equals
    ``1 - |boundary|/2 + sum of 1/deg(v)``."""
    return sum(
        corner_curvature(X, v, f, apartment) for v in X.faces[f]
    )


def gauss_bonnet_sum(X: PolygonalComplex) -> Fraction:
    """Total curvature of a finite closed surface tessellation.

    Requires a complete complex in which every edge bounds exactly two
    faces and every vertex star closes into a single cycle; the sum then
    equals the Euler characteristic (2 for sphere tessellations), exactly.
    """
    if not X.is_complete():
        raise ComplexError("total curvature needs a complete finite complex")
    for e in range(len(X.edges)):
        if len(X.edge_faces[e]) != 2:
            raise ComplexError(
                f"edge {e} bounds {len(X.edge_faces[e])} faces; "
                "a closed surface needs exactly 2"
            )
    total = Fraction(0)
    for f in range(len(X.faces)):
        total += face_curvature(X, f, apartment=None)
    return total


# ---------------------------------------------------------------------------
# aggregate report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurvatureReport:
    """Corner and face curvature tables over trusted corners, with sign
    summary and a decay proxy over growing annuli."""

    corner_table: Mapping[tuple[int, int, int], Fraction]  # (apartment, v, f)
    face_table: Mapping[tuple[int, int], Fraction]  # (apartment, f)
    minimum: Fraction | None
    maximum: Fraction | None
    all_nonpositive: bool
    all_negative: bool
    all_positive: bool
    center: int
    radius: int
    #: ``sup`` of face curvature outside the ball of radius r (r = 0..R-1),
    #: a finite-window stand-in for the curvature-at-infinity invariant.
    kappa_infinity_proxy: tuple[Fraction | None, ...]


def curvature_report(
    X: PolygonalComplex,
    apartments: Sequence[Apartment] | None = None,
    center: int | None = None,
    radius: int | None = None,
) -> CurvatureReport:
    """Tabulate corner and face curvature over the trusted ball.

    Corners are keyed by apartment; only corners whose vertex is interior
    to its apartment and whose face is trusted enter the tables and the
    sign flags.  The decay proxy reports, for each inner radius r, the
    supremum of face curvature over trusted apartment faces at distance
    in (r, R] from the center.
    """
    if apartments is None:
        apartments = X.apartments or (
            Apartment(index=-1, faces=frozenset(range(len(X.faces)))),
        )
    if center is None:
        center = int(X.meta.get("center", 0))
    m = face_metric(X)
    trusted = X.trusted_faces()
    dist = m.distances_from(center, limit=radius)

    corner_table: dict[tuple[int, int, int], Fraction] = {}
    face_table: dict[tuple[int, int], Fraction] = {}
    for ap in apartments:
        interior = apartment_interior_vertices(X, ap.faces)
        whole = len(ap.faces) == len(X.faces)
        for f in sorted(ap.faces):
            if f not in trusted:
                continue
            corners = {}
            for v in X.faces[f]:
                if v not in interior:
                    continue
                if whole and not X.vertex_complete(v):
                    continue
                corners[v] = corner_curvature(X, v, f, ap.faces)
            for v, val in corners.items():
                corner_table[(ap.index, v, f)] = val
            if len(corners) == len(X.faces[f]):
                face_table[(ap.index, f)] = sum(corners.values())

    values = list(corner_table.values())
    lo = min(values) if values else None
    hi = max(values) if values else None

    if radius is None:
        # default window: out to the farthest fully-tabled face
        tabled = [dist.get(f) for (_, f) in face_table]
        radius = max((d for d in tabled if d is not None), default=0)

    proxy: list[Fraction | None] = []
    for r in range(radius):
        sup = None
        for (ap_i, f), val in face_table.items():
            d = dist.get(f)
            if d is None or d <= r or d > radius:
                continue
            if sup is None or val > sup:
                sup = val
        proxy.append(sup)

    return CurvatureReport(
        corner_table=corner_table,
        face_table=face_table,
        minimum=lo,
        maximum=hi,
        all_nonpositive=bool(values) and all(v <= 0 for v in values),
        all_negative=bool(values) and all(v < 0 for v in values),
        all_positive=bool(values) and all(v > 0 for v in values),
        center=center,
        radius=radius,
        kappa_infinity_proxy=tuple(proxy),
    )


# ---------------------------------------------------------------------------
# triangle-group style polygon classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoxeterClass:
    """Geometry prediction for a k-gon with corner angle denominators
    ``m_1..m_k`` (corner angles pi/m_i)."""

    arity: int
    denominators: tuple[int, ...]
    geometry: str  # "spherical" | "euclidean" | "hyperbolic"
    apartment_vertex_degrees: tuple[int, ...]
    corner_curvatures: tuple[Fraction, ...]
    face_curvature: Fraction
    regular_constant: Fraction | None

    @property
    def angle_excess(self) -> Fraction:
        """``sum 1/m_i - (k - 2)``: positive is spherical, zero flat."""
        return sum(Fraction(1, m) for m in self.denominators) - (self.arity - 2)


def coxeter_classify(m: Sequence[int]) -> CoxeterClass:
    """Classify the k-gon with angles ``pi/m_i`` and predict the curvature
    data of the tessellation it generates by reflections.

    The polygon is spherical, Euclidean, or hyperbolic according to the
    sign of ``sum 1/m_i - (k-2)``; the reflection tessellation has vertex
    degree ``2 m_i`` at the i-th corner, giving corner curvature
    ``1/(2 m_i) - 1/2 + 1/k``.  When all denominators agree the corner
    value is the constant ``(2m + k - mk) / (2mk)``.
    """
    denoms = tuple(int(x) for x in m)
    k = len(denoms)
    if k < 3:
        raise ComplexError("a polygon needs at least 3 corners")
    if any(mi < 2 for mi in denoms):
        raise ComplexError("angle denominators must be >= 2")
    excess = sum(Fraction(1, mi) for mi in denoms) - (k - 2)
    if excess > 0:
        geometry = "spherical"
    elif excess == 0:
        geometry = "euclidean"
    else:
        geometry = "hyperbolic"
    corners = tuple(
        Fraction(1, 2 * mi) - HALF + Fraction(1, k) for mi in denoms
    )
    constant = None
    if len(set(denoms)) == 1:
        mm = denoms[0]
        constant = Fraction(2 * mm + k - mm * k, 2 * mm * k)
    return CoxeterClass(
        arity=k,
        denominators=denoms,
        geometry=geometry,
        apartment_vertex_degrees=tuple(2 * mi for mi in denoms),
        corner_curvatures=corners,
        face_curvature=sum(corners, Fraction(0)),
        regular_constant=constant,
    )


# ---------------------------------------------------------------------------
# finite-versus-infinite dichotomy evidence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MyersEvidence:
    """Which branch of the positive-curvature dichotomy the complex is
    consistent with, judged from trusted face curvatures."""

    verdict: str  # "consistent-positive-finite" | "consistent-nonpositive-growing" | "no claim"
    face_minimum: Fraction | None
    face_maximum: Fraction | None
    finite: bool
    sphere_sizes: tuple[int, ...]
    note: str


def myers_evidence(X: PolygonalComplex) -> MyersEvidence:
    """Check the complex against the dichotomy: everywhere positive face
    curvature forces finiteness, while nonpositive face curvature keeps the
    ball volumes growing.

    Judged at face level (summed corners), so mixed corner signs with
    negative faces still land in the nonpositive branch.
    """
    rep = curvature_report(X)
    values = list(rep.face_table.values())
    lo = min(values) if values else None
    hi = max(values) if values else None
    finite = X.is_complete()
    m = face_metric(X)
    center = int(X.meta.get("center", 0))
    w = m.w(center)
    rmax = (
        max(m.distances_from(center).values())
        if w == float("inf")
        else int(w)
    )
    dist = m.distances_from(center, limit=rmax)
    sizes = [0] * (rmax + 1)
    for f, d in dist.items():
        if d <= rmax:
            sizes[d] += 1
    sizes_t = tuple(sizes)

    if not values:
        return MyersEvidence(
            verdict="no claim",
            face_minimum=None,
            face_maximum=None,
            finite=finite,
            sphere_sizes=sizes_t,
            note="no trusted fully-interior faces to judge",
        )
    if lo > 0:
        if finite:
            return MyersEvidence(
                verdict="consistent-positive-finite",
                face_minimum=lo,
                face_maximum=hi,
                finite=True,
                sphere_sizes=sizes_t,
                note="all trusted face curvatures positive and the complex is finite",
            )
        return MyersEvidence(
            verdict="no claim",
            face_minimum=lo,
            face_maximum=hi,
            finite=False,
            sphere_sizes=sizes_t,
            note="positive curvature on a truncated complex: finiteness not observable",
        )
    if hi <= 0:
        growing = all(s > 0 for s in sizes_t)
        if growing and not finite:
            return MyersEvidence(
                verdict="consistent-nonpositive-growing",
                face_minimum=lo,
                face_maximum=hi,
                finite=False,
                sphere_sizes=sizes_t,
                note="nonpositive face curvature and every certified sphere is nonempty",
            )
        return MyersEvidence(
            verdict="no claim",
            face_minimum=lo,
            face_maximum=hi,
            finite=finite,
            sphere_sizes=sizes_t,
            note="nonpositive curvature but growth not certifiable",
        )
    return MyersEvidence(
        verdict="no claim",
        face_minimum=lo,
        face_maximum=hi,
        finite=finite,
        sphere_sizes=sizes_t,
        note="face curvatures change sign",
    )
