"""Face-adjacency metric structure: distances, geodesic intervals, spheres,
cut loci, bigons, and four-point hyperbolicity estimates.

All answers are certified against the truncation of the complex: an
operation whose result could be changed by unbuilt cells raises
:class:`~curvcx.errors.UntrustedRegionError` instead of answering.  The
certification device is the per-face *safety margin* ``W(f)``: the dual
distance from ``f`` to the nearest incomplete face (infinite when the
complex is fully built).  Any face path that leaves the built region from
``f`` and re-enters at ``g`` has length at least ``W(f) + W(g) + 2``, so a
built distance ``d(f,g) <= W(f) + W(g) + 1`` cannot be improved by unbuilt
cells and is exact.  The same margin certifies interval enumeration: every
true geodesic between such a pair is entirely built.
"""

from __future__ import annotations

import weakref
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .core import PolygonalComplex
from .errors import BudgetExceededError, ComplexError, UntrustedRegionError

__all__ = [
    "FaceMetric",
    "GeodesicInterval",
    "SphereRow",
    "SphereReport",
    "BigonEnumeration",
    "face_metric",
    "distance",
    "interval",
    "spheres",
    "cut_locus",
    "bigon_certificate",
    "enumerate_bigons",
    "four_point_delta",
    "BigonSweep",
    "bigon_sweep",
    "DEFAULT_QUADRUPLE_BUDGET",
]

#: Cap on |sample|**4 for the exhaustive four-point scan.
DEFAULT_QUADRUPLE_BUDGET = 4_000_000_000

_UNREACHED = -1


class FaceMetric:
    """Dual-graph metric of a complex, with cached BFS and safety margins."""

    def __init__(self, X: PolygonalComplex) -> None:
        self.X = X
        n = len(X.faces)
        self.adjacency: list[tuple[int, ...]] = [
            tuple(X.face_neighbors(f)) for f in range(n)
        ]
        self._w: list[float] | None = None
        # per-source cache: face -> (limit or None for full, distance dict)
        self._bfs: dict[int, tuple[int | None, dict[int, int]]] = {}

    # -- safety margins ------------------------------------------------------

    def w_values(self) -> Sequence[float]:
        """``W(f)`` for every face: dual distance to the nearest incomplete
        face (``inf`` everywhere when the complex is fully built)."""
        if self._w is None:
            n = len(self.adjacency)
            X = self.X
            w: list[float] = [float("inf")] * n
            q: deque[int] = deque()
            for f in range(n):
                if not X.face_complete(f):
                    w[f] = 0
                    q.append(f)
            while q:
                f = q.popleft()
                for g in self.adjacency[f]:
                    if w[g] > w[f] + 1:
                        w[g] = w[f] + 1
                        q.append(g)
            self._w = w
        return self._w

    def w(self, f: int) -> float:
        return self.w_values()[f]

    # -- distances -----------------------------------------------------------

    def distances_from(self, f: int, limit: int | None = None) -> dict[int, int]:
        """BFS distances from ``f`` in the built dual graph, optionally only
        out to ``limit``.  Results are cached per source."""
        cached = self._bfs.get(f)
        if cached is not None:
            stored_limit, dist = cached
            if stored_limit is None:
                if limit is None:
                    return dist
                return {g: d for g, d in dist.items() if d <= limit}
            if limit is not None and limit <= stored_limit:
                return {g: d for g, d in dist.items() if d <= limit}
        dist = {f: 0}
        q = deque([f])
        while q:
            h = q.popleft()
            if limit is not None and dist[h] >= limit:
                continue
            for g in self.adjacency[h]:
                if g not in dist:
                    dist[g] = dist[h] + 1
                    q.append(g)
        self._bfs[f] = (limit, dist)
        return dist

    def certified(self, f: int, g: int, d: int) -> bool:
        """Whether the built distance ``d`` between ``f`` and ``g`` is exact:
        any path through unbuilt cells would be longer than ``d``."""
        w = self.w_values()
        return d <= w[f] + w[g] + 1

    def distance(self, f: int, g: int) -> int:
        """Exact dual distance; raises when unbuilt cells could change it."""
        self._check_face(f)
        self._check_face(g)
        if f == g:
            return 0
        dist = self.distances_from(f)
        if g not in dist:
            if self.X.is_complete():
                raise ComplexError(f"faces {f} and {g} are not connected")
            raise UntrustedRegionError(
                f"faces {f} and {g} are not connected in the built part; "
                "a connection could exist through unbuilt cells"
            )
        d = dist[g]
        if not self.certified(f, g, d):
            raise UntrustedRegionError(
                f"distance {d} between faces {f} and {g} is not certified: "
                f"margins W={self.w(f)}, W={self.w(g)} admit a shorter path "
                "through unbuilt cells"
            )
        return d

    def _check_face(self, f: int) -> None:
        if not 0 <= f < len(self.adjacency):
            raise ComplexError(f"face id {f} out of range")


_METRICS: "weakref.WeakKeyDictionary[PolygonalComplex, FaceMetric]" = (
    weakref.WeakKeyDictionary()
)


def face_metric(X: PolygonalComplex) -> FaceMetric:
    """The (cached) dual-graph metric of ``X``."""
    m = _METRICS.get(X)
    if m is None:
        m = FaceMetric(X)
        _METRICS[X] = m
    return m


def distance(X: PolygonalComplex, f: int, g: int) -> int:
    """Exact combinatorial distance between faces ``f`` and ``g``."""
    return face_metric(X).distance(f, g)


# ---------------------------------------------------------------------------
# geodesic intervals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeodesicInterval:
    """All faces on geodesics from ``f`` to ``g``, layered by distance from
    ``f``.  Layer ``k`` holds the members at distance ``k`` from ``f`` and
    ``length - k`` from ``g``."""

    f: int
    g: int
    length: int
    layers: tuple[tuple[int, ...], ...]

    @property
    def members(self) -> frozenset[int]:
        return frozenset(h for layer in self.layers for h in layer)

    def __contains__(self, h: int) -> bool:
        return any(h in layer for layer in self.layers)


def interval(X: PolygonalComplex, f: int, g: int) -> GeodesicInterval:
    """The geodesic interval between ``f`` and ``g``.

    The certification margin that makes the distance exact also guarantees
    that every true geodesic between the pair is entirely built, so the
    member enumeration is complete; a member found by built BFS is always a
    true member because built distances only overestimate.
    """
    m = face_metric(X)
    n = m.distance(f, g)
    df = m.distances_from(f, limit=n)
    dg = m.distances_from(g, limit=n)
    layers: list[list[int]] = [[] for _ in range(n + 1)]
    for h, d1 in df.items():
        d2 = dg.get(h)
        if d2 is not None and d1 + d2 == n:
            layers[d1].append(h)
    return GeodesicInterval(
        f=f, g=g, length=n, layers=tuple(tuple(sorted(l)) for l in layers)
    )


# ---------------------------------------------------------------------------
# spheres and degree tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SphereRow:
    """Forward/backward/same-sphere neighbor counts of one face."""

    face: int
    distance: int
    forward: int
    backward: int
    same: int
    complete: bool
    certified: bool


@dataclass(frozen=True)
class SphereReport:
    center: int
    radius: int
    spheres: tuple[tuple[int, ...], ...]
    rows: tuple[SphereRow, ...]
    enumeration_certified: bool

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.spheres)

    def row(self, f: int) -> SphereRow:
        for r in self.rows:
            if r.face == f:
                return r
        raise KeyError(f)

    def max_backward(self) -> int:
        """Largest certified backward degree over complete faces at
        distance >= 1."""
        vals = [
            r.backward
            for r in self.rows
            if r.distance >= 1 and r.complete and r.certified
        ]
        return max(vals, default=0)


def spheres(X: PolygonalComplex, o: int, R: int) -> SphereReport:
    """Distance spheres ``S_0 .. S_R`` around ``o`` with per-face neighbor
    tables.

    Requires every face of ``B_R`` to be trusted.  Layer membership is
    certified when ``R <= W(o)`` (every true face of the ball is then built
    at its exact distance).  A row is ``certified`` when the distances of
    the face and all its built neighbors are exact under the margin guard;
    for a complete certified row, forward + backward + same equals the true
    number of neighbors.
    """
    m = face_metric(X)
    m._check_face(o)
    if R < 0:
        raise ComplexError("radius must be >= 0")
    w = m.w_values()
    dist = m.distances_from(o, limit=R + 1)
    trusted = X.trusted_faces()
    ball = sorted(f for f, d in dist.items() if d <= R)
    untrusted = [f for f in ball if f not in trusted]
    if untrusted:
        raise UntrustedRegionError(
            f"ball of radius {R} around face {o} leaves the trusted region "
            f"(e.g. face {untrusted[0]})"
        )
    layers: list[list[int]] = [[] for _ in range(R + 1)]
    rows = []
    for f in ball:
        d = dist[f]
        layers[d].append(f)
        fwd = back = same = 0
        cert = m.certified(o, f, d)
        for g in m.adjacency[f]:
            dg = dist.get(g)
            if dg is None:
                # neighbor beyond the BFS horizon: it is at distance R+1
                # only possible when d == R
                dg = R + 1
            if not m.certified(o, g, dg):
                cert = False
            if dg == d + 1:
                fwd += 1
            elif dg == d - 1:
                back += 1
            elif dg == d:
                same += 1
        rows.append(
            SphereRow(
                face=f,
                distance=d,
                forward=fwd,
                backward=back,
                same=same,
                complete=X.face_complete(f),
                certified=cert,
            )
        )
    return SphereReport(
        center=o,
        radius=R,
        spheres=tuple(tuple(l) for l in layers),
        rows=tuple(rows),
        enumeration_certified=R <= w[o],
    )


# ---------------------------------------------------------------------------
# cut locus
# ---------------------------------------------------------------------------


def cut_locus(X: PolygonalComplex, o: int, R: int) -> frozenset[int]:
    """Faces at distance ``<= R - 1`` from ``o`` where the distance attains a
    local maximum (no neighbor is farther).

    The restriction to ``R - 1`` keeps truncation artifacts out: a face on
    the outermost examined sphere might have its forward neighbors outside
    the ball.  Soundness: with ``W(o) >= R - 1`` the candidate enumeration
    is complete and all involved distances are exact; a face that is
    incomplete but has a built farther neighbor is certainly not in the cut
    locus; an incomplete face with no built farther neighbor is
    undecidable and raises.
    """
    m = face_metric(X)
    m._check_face(o)
    if R < 1:
        raise ComplexError("radius must be >= 1")
    w = m.w_values()
    if w[o] < R - 1:
        raise UntrustedRegionError(
            f"cut locus needs margin W(center) >= {R - 1}, got {w[o]}: "
            "candidate faces could be missing from the built ball"
        )
    dist = m.distances_from(o, limit=R)
    trusted = X.trusted_faces()
    members = []
    for f, d in dist.items():
        if d > R - 1:
            continue
        if f not in trusted:
            raise UntrustedRegionError(
                f"face {f} at distance {d} from {o} is outside the trusted region"
            )
        has_forward = any(dist.get(g, R + 1) == d + 1 for g in m.adjacency[f])
        if has_forward:
            continue
        if not X.face_complete(f):
            raise UntrustedRegionError(
                f"face {f} has no built farther neighbor but is incomplete; "
                "an unbuilt neighbor could be farther"
            )
        members.append(f)
    return frozenset(members)


# ---------------------------------------------------------------------------
# bigons
# ---------------------------------------------------------------------------


def bigon_certificate(X: PolygonalComplex, f: int, g: int) -> int:
    """``max_k |B_k(f) ∩ B_{n-k}(g)|`` for ``n = d(f,g)``.

    Equals the largest interval layer: a face in ``B_k(f) ∩ B_{n-k}(g)``
    has distance sums at most ``n`` and at least ``n``, hence lies on a
    geodesic with exact split.  A value ``<= 2`` certifies that all bigons
    between ``f`` and ``g`` are 1-thin.
    """
    iv = interval(X, f, g)
    return max(len(layer) for layer in iv.layers)


@dataclass(frozen=True)
class BigonEnumeration:
    """All geodesics between two faces with two drift measurements.

    ``delta_bigon`` is the largest Hausdorff distance between two geodesic
    tracks viewed as face sets: for each face on one track, how far is the
    nearest face of the other track, in the worst case over all pairs of
    tracks.  This is the quantity that stays at most 1 in the negatively
    curved families.  ``index_spreads`` records the stricter position-by-
    position comparison d(track[k], other_track[k]); that value can reach 2
    even in negatively curved complexes (two tracks can round a degree-5
    corner on opposite sides), so it is reported as a diagnostic rather
    than used for the thinness verdict.
    """

    f: int
    g: int
    length: int
    geodesics: tuple[tuple[int, ...], ...]
    index_spreads: tuple[int, ...]
    delta_bigon: int

    @property
    def count(self) -> int:
        return len(self.geodesics)

    @property
    def max_index_spread(self) -> int:
        return max(self.index_spreads, default=0)


def enumerate_bigons(
    X: PolygonalComplex, f: int, g: int, cap: int = 1000
) -> BigonEnumeration:
    """Enumerate every geodesic from ``f`` to ``g`` and measure how far two
    of them can drift apart at equal indices.

    The number of geodesics is counted first by dynamic programming on the
    layered interval; if it exceeds ``cap`` the enumeration is refused
    (fall back to :func:`bigon_certificate`).
    """
    m = face_metric(X)
    iv = interval(X, f, g)
    n = iv.length
    adj = m.adjacency
    # DP geodesic count, layer by layer
    ways: dict[int, int] = {f: 1}
    for k in range(1, n + 1):
        prev = set(iv.layers[k - 1])
        nxt: dict[int, int] = {}
        for h in iv.layers[k]:
            total = sum(ways[x] for x in adj[h] if x in prev)
            nxt[h] = total
        ways = nxt
    total = ways.get(g, 0)
    if total > cap:
        raise BudgetExceededError(
            f"{total} geodesics between faces {f} and {g} exceed the cap {cap}"
        )
    # enumerate
    layer_sets = [set(layer) for layer in iv.layers]
    geodesics: list[tuple[int, ...]] = []
    stack: list[int] = [f]

    def extend(k: int) -> None:
        if k == n:
            geodesics.append(tuple(stack))
            return
        for h in sorted(layer_sets[k + 1]):
            if h in adj[stack[-1]] or stack[-1] in adj[h]:
                stack.append(h)
                extend(k + 1)
                stack.pop()

    extend(0)
    dmemo: dict[tuple[int, int], int] = {}

    def dist(a: int, b: int) -> int:
        if a == b:
            return 0
        key = (a, b) if a < b else (b, a)
        if key not in dmemo:
            dmemo[key] = m.distance(*key)
        return dmemo[key]

    spreads = []
    for k in range(n + 1):
        worst = 0
        for i in range(len(geodesics)):
            for j in range(i + 1, len(geodesics)):
                a, b = geodesics[i][k], geodesics[j][k]
                if a != b:
                    worst = max(worst, dist(a, b))
        spreads.append(worst)
    delta = 0
    for i in range(len(geodesics)):
        for j in range(i + 1, len(geodesics)):
            ga, gb = geodesics[i], geodesics[j]
            for a in ga:
                delta = max(delta, min(dist(a, b) for b in gb))
            for b in gb:
                delta = max(delta, min(dist(a, b) for a in ga))
    return BigonEnumeration(
        f=f,
        g=g,
        length=n,
        geodesics=tuple(geodesics),
        index_spreads=tuple(spreads),
        delta_bigon=delta,
    )


# ---------------------------------------------------------------------------
# four-point hyperbolicity estimate
# ---------------------------------------------------------------------------


def four_point_delta(
    X: PolygonalComplex,
    sample: Iterable[int],
    budget: int | None = None,
) -> Fraction:
    """The smallest ``δ`` such that every quadruple of the sample satisfies
    the four-point condition ``(x|y)_w >= min((x|z)_w, (y|z)_w) - δ``.

    Equivalently half the largest gap between the two biggest of the three
    pairing sums ``d(w,x)+d(y,z)``, ``d(w,y)+d(x,z)``, ``d(w,z)+d(x,y)``.
    All pairwise distances are certified first; the scan is exhaustive over
    quadruples (with the symmetric reductions), so the budget bounds
    ``|sample|**4``.
    """
    faces = sorted(set(sample))
    cap = DEFAULT_QUADRUPLE_BUDGET if budget is None else budget
    if len(faces) ** 4 > cap:
        raise BudgetExceededError(
            f"{len(faces)}^4 quadruples exceed the budget {cap}"
        )
    m = face_metric(X)
    k = len(faces)
    if k < 4:
        return Fraction(0)
    D = np.zeros((k, k), dtype=np.int32)
    w = m.w_values()
    for i, a in enumerate(faces):
        dist = m.distances_from(a)
        for j, b in enumerate(faces):
            if j == i:
                continue
            d = dist.get(b)
            if d is None:
                raise UntrustedRegionError(
                    f"faces {a} and {b} are not connected in the built part"
                )
            if d > w[a] + w[b] + 1:
                raise UntrustedRegionError(
                    f"distance between faces {a} and {b} is not certified"
                )
            D[i, j] = d
    best = 0
    for i in range(k):
        Di = D[i]
        for j in range(i + 1, k):
            # pairing sums against the fixed pair (i, j)
            s1 = int(D[i, j]) + D  # d(i,j) + d(y,z)
            s2 = Di[:, None] + D[j][None, :]  # d(i,y) + d(j,z)
            s3 = s2.T  # d(i,z) + d(j,y)
            hi = np.maximum(s1, s2)
            lo = np.minimum(s1, s2)
            top = np.maximum(hi, s3)
            bot = np.minimum(lo, s3)
            mid = s1 + s2 + s3 - top - bot
            gap = int((top - mid).max())
            if gap > best:
                best = gap
    return Fraction(best, 2)


@dataclass(frozen=True)
class BigonSweep:
    """Worst-case geodesic-bundle widths over all certified face pairs up to
    a distance cap inside a ball.

    ``max_certificate`` is the largest interval-layer size seen (the bigon
    certificate of the worst pair).  ``delta_upper`` bounds the index-wise
    bigon spread of every pair: any two geodesics occupy the same interval
    layers, so their index-wise distance never exceeds the layer diameter.
    """

    center: int
    ball_radius: int
    distance_cap: int
    pairs: int
    max_certificate: int
    delta_upper: int
    wide_pairs: int


def bigon_sweep(
    X: PolygonalComplex, o: int, ball_radius: int, distance_cap: int
) -> BigonSweep:
    """Exhaustively scan every unordered face pair inside the ball with
    distance ≤ ``distance_cap``: certify the distance, size the geodesic
    interval layers, and bound the Hausdorff drift between geodesic tracks.

    For a pair with more than one geodesic the drift is at least 1.  It is
    at most 1 whenever every face of every interval layer is adjacent to
    all of the previous layer, all of the next layer, or all other faces
    of its own layer — any geodesic track must pass through each layer, so
    one of those faces is on it.  Pairs that fail this local test (none in
    the negatively curved families) fall back to exact enumeration."""
    m = face_metric(X)
    m._check_face(o)
    dist_o = m.distances_from(o, limit=ball_radius)
    ball = sorted(f for f, d in dist_o.items() if d <= ball_radius)
    k = len(ball)
    n_faces = len(m.adjacency)
    w = m.w_values()
    DF = np.full((k, n_faces), 127, dtype=np.int8)
    for i, f in enumerate(ball):
        for h, d in m.distances_from(f, limit=distance_cap).items():
            DF[i, h] = d
    ids = np.array(ball)
    M = DF[:, ids]
    pairs = 0
    max_cert = 1
    delta_upper = 0
    wide_pairs = 0
    arange = np.arange(k)
    neighbor_sets = [set(m.adjacency[f]) for f in range(n_faces)]
    for i in range(k):
        row = DF[i].astype(np.int16)
        sub = np.nonzero(DF[i] <= distance_cap)[0]
        rs = row[sub]
        js = np.nonzero((M[i] <= distance_cap) & (arange > i))[0]
        wf = w[ball[i]]
        for j in js:
            n = int(M[i, j])
            if not n <= wf + w[ball[j]] + 1:
                raise UntrustedRegionError(
                    f"distance between faces {ball[i]} and {ball[j]} is "
                    "not certified; grow the complex"
                )
            pairs += 1
            if n < 2:
                continue
            mem = sub[(rs + DF[j][sub]) == n]
            pos = DF[i][mem]
            widths = np.bincount(pos, minlength=n + 1)
            c = int(widths.max())
            if c > max_cert:
                max_cert = c
            if c > 1:
                wide_pairs += 1
                layers = [[int(x) for x in mem[pos == kk]] for kk in range(n + 1)]
                thin = True
                for kk in range(1, n):
                    for fa in layers[kk]:
                        nb = neighbor_sets[fa]
                        if (
                            all(b in nb for b in layers[kk] if b != fa)
                            or all(b in nb for b in layers[kk - 1])
                            or all(b in nb for b in layers[kk + 1])
                        ):
                            continue
                        thin = False
                        break
                    if not thin:
                        break
                if thin:
                    dd = 1
                else:
                    dd = enumerate_bigons(X, ball[i], ball[j], cap=100_000).delta_bigon
                if dd > delta_upper:
                    delta_upper = dd
    return BigonSweep(
        center=o,
        ball_radius=ball_radius,
        distance_cap=distance_cap,
        pairs=pairs,
        max_certificate=max_cert,
        delta_upper=delta_upper,
        wide_pairs=wide_pairs,
    )
