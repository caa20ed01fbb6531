"""Isoperimetric (Cheeger) quantities: exact boundary/volume accounting for
face sets, brute-force minimization over small regions, an exact global
minimum via parametric minimum cut, degree-based lower bounds, and the
annulus infimum sequence used as the at-infinity proxy.

Accounting convention: the boundary of a face set K counts ordered pairs
(f, g) with f in K adjacent to g outside K, where g ranges over the *true*
neighbor set — neighbors that exist in the full complex but were never
built are always outside K.  Volume adds true face degrees.  Finite
truncations therefore represent subsets of the infinite complex faithfully.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import PolygonalComplex
from .errors import BudgetExceededError, ComplexError, UntrustedRegionError
from .metric import face_metric

__all__ = [
    "CheegerWitness",
    "CheegerBounds",
    "witness",
    "cheeger_bruteforce",
    "cheeger_global_minimum",
    "cheeger_lower_bounds",
    "cheeger_at_infinity",
    "local_cheeger_term",
    "MAX_BRUTEFORCE_REGION",
]

MAX_BRUTEFORCE_REGION = 22


@dataclass(frozen=True)
class CheegerWitness:
    """A face set with its exact boundary pair count and volume.

    The ratio of any single witness is an upper bound on the isoperimetric
    constant of the (possibly infinite) complex; nothing finite certifies
    that constant from below, so this class never claims to be it.
    """

    faces: frozenset[int]
    boundary: int
    volume: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.boundary, self.volume)

    bound_kind = "upper-bound-on-alpha"


def witness(X: PolygonalComplex, faces: Iterable[int]) -> CheegerWitness:
    """Exact boundary/volume accounting for an arbitrary nonempty face set."""
    K = frozenset(faces)
    if not K:
        raise ComplexError("a Cheeger witness needs a nonempty face set")
    vol = 0
    boundary = 0
    for f in K:
        vol += X.true_face_degree(f)
        inside = sum(1 for g in X.face_neighbors(f) if g in K)
        boundary += X.true_face_degree(f) - inside
    return CheegerWitness(faces=K, boundary=boundary, volume=vol)


# ---------------------------------------------------------------------------
# brute force over small regions
# ---------------------------------------------------------------------------


def cheeger_bruteforce(
    X: PolygonalComplex,
    region: Iterable[int],
    max_size: int = MAX_BRUTEFORCE_REGION,
) -> CheegerWitness:
    """Exact minimizer of boundary/volume over nonempty subsets of a small
    region.

    Only connected subsets are scanned: a disconnected set's ratio is at
    least the minimum over its components (boundary adds, volume adds, and
    a mediant never undercuts the smaller fraction), so the minimum value
    is attained on a connected set.  Every region face must be complete so
    that its adjacency is fully known.

    On a complete finite complex the unconstrained minimum degenerates
    (the whole complex has empty boundary), so the usual finite-graph
    convention applies there: only sets with at most half the total volume
    compete.  Truncated complexes represent subsets of an infinite one and
    need no such rule.
    """
    faces = sorted(set(region))
    if not faces:
        raise ComplexError("empty region")
    if max_size > MAX_BRUTEFORCE_REGION:
        raise BudgetExceededError(
            f"region cap {max_size} exceeds the hard limit {MAX_BRUTEFORCE_REGION}"
        )
    if len(faces) > max_size:
        raise BudgetExceededError(
            f"region has {len(faces)} faces, more than the cap {max_size}"
        )
    for f in faces:
        if not X.face_complete(f):
            raise UntrustedRegionError(
                f"face {f} is incomplete; its adjacency inside the region "
                "is not fully known"
            )
    idx = {f: i for i, f in enumerate(faces)}
    n = len(faces)
    adj = [0] * n
    deg = [X.true_face_degree(f) for f in faces]
    for f in faces:
        for g in X.face_neighbors(f):
            j = idx.get(g)
            if j is not None:
                adj[idx[f]] |= 1 << j
    vol_cap = (
        sum(X.true_face_degree(f) for f in range(len(X.faces)))
        if X.is_complete()
        else None
    )

    best_b, best_v, best_mask = 1, 1, 1 << 0  # placeholder, overwritten below
    first = True
    for r in range(n):
        allowed = ((1 << n) - 1) & ~((1 << r) - 1)
        root_b, root_v = deg[r], deg[r]
        if vol_cap is not None and 2 * root_v > vol_cap:
            continue
        stack = [(1 << r, root_b, root_v, adj[r] & allowed & ~(1 << r), 0)]
        while stack:
            cur, b, v, frontier, banned = stack.pop()
            if first or b * best_v < best_b * v:
                best_b, best_v, best_mask = b, v, cur
                first = False
            fr = frontier & ~banned
            ban = banned
            while fr:
                bit = fr & -fr
                fr &= fr - 1
                vi = bit.bit_length() - 1
                nv = v + deg[vi]
                if vol_cap is not None and 2 * nv > vol_cap:
                    ban |= bit
                    continue  # supersets only grow: prune the branch
                inside = (adj[vi] & cur).bit_count()
                nb = b + deg[vi] - 2 * inside
                nf = (frontier | (adj[vi] & allowed)) & ~(cur | bit)
                stack.append((cur | bit, nb, nv, nf, ban))
                ban |= bit
    members = frozenset(faces[i] for i in range(n) if best_mask >> i & 1)
    return CheegerWitness(faces=members, boundary=best_b, volume=best_v)


# ---------------------------------------------------------------------------
# exact global minimum via parametric minimum cut
# ---------------------------------------------------------------------------


class _Dinic:
    def __init__(self, n: int) -> None:
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add(self, u: int, v: int, c: int, rc: int = 0) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(rc)

    def maxflow(self, s: int, t: int) -> int:
        flow = 0
        INF = 1 << 62
        while True:
            level = [-1] * self.n
            level[s] = 0
            q = deque([s])
            while q:
                u = q.popleft()
                for e in self.head[u]:
                    if self.cap[e] > 0 and level[self.to[e]] < 0:
                        level[self.to[e]] = level[u] + 1
                        q.append(self.to[e])
            if level[t] < 0:
                return flow
            it = [0] * self.n

            def dfs(u: int, pushed: int) -> int:
                if u == t:
                    return pushed
                while it[u] < len(self.head[u]):
                    e = self.head[u][it[u]]
                    v = self.to[e]
                    if self.cap[e] > 0 and level[v] == level[u] + 1:
                        got = dfs(v, min(pushed, self.cap[e]))
                        if got:
                            self.cap[e] -= got
                            self.cap[e ^ 1] += got
                            return got
                    it[u] += 1
                return 0

            while True:
                pushed = dfs(s, INF)
                if not pushed:
                    break
                flow += pushed

    def min_side(self, s: int) -> set[int]:
        side = {s}
        q = deque([s])
        while q:
            u = q.popleft()
            for e in self.head[u]:
                if self.cap[e] > 0 and self.to[e] not in side:
                    side.add(self.to[e])
                    q.append(self.to[e])
        return side


def cheeger_global_minimum(
    X: PolygonalComplex, region: Iterable[int]
) -> CheegerWitness:
    """Exact minimum of boundary/volume over ALL nonempty subsets of the
    region, of any size.

    Fractional programming: the minimum ratio λ* is the largest λ with
    min_K (|∂K| − λ·vol(K)) = 0, and for fixed rational λ the inner
    minimum is a minimum s-t cut (internal adjacencies are unit edges,
    the out-of-region boundary and the −λ·vol term attach each face to
    the source or sink).  Iterating λ ← ratio of the improving cut
    converges in finitely many exact steps.  The returned witness is the
    best connected component of the final minimizer, whose ratio equals
    the global minimum.
    """
    if X.is_complete():
        raise ComplexError(
            "on a complete finite complex the unconstrained ratio minimum "
            "degenerates to 0; use cheeger_bruteforce, which applies the "
            "half-volume rule"
        )
    faces = sorted(set(region))
    if not faces:
        raise ComplexError("empty region")
    idx = {f: i for i, f in enumerate(faces)}
    n = len(faces)
    deg = [X.true_face_degree(f) for f in faces]
    nbrs: list[list[int]] = [[] for _ in range(n)]
    ext = list(deg)  # boundary pairs leaving the region (incl. unbuilt)
    for f in faces:
        i = idx[f]
        for g in X.face_neighbors(f):
            j = idx.get(g)
            if j is not None:
                nbrs[i].append(j)
                ext[i] -= 1

    def best_cut(lam: Fraction) -> set[int] | None:
        """Minimizer of |∂K| − lam·vol(K); None when only K = ∅ achieves ≤ 0."""
        p, q = lam.numerator, lam.denominator
        # scaled objective: q·|∂K| − p·vol(K) = Σ a(i) + q·cut(K, rest)
        dn = _Dinic(n + 2)
        s, t = n, n + 1
        for i in range(n):
            a = q * ext[i] - p * deg[i]
            if a < 0:
                dn.add(s, i, -a)
            elif a > 0:
                dn.add(i, t, a)
            for j in nbrs[i]:
                if j > i:
                    dn.add(i, j, q, q)
        base = sum(min(q * ext[i] - p * deg[i], 0) for i in range(n))
        flow = dn.maxflow(s, t)
        if base + flow >= 0:
            return None  # min over nonempty K is ≥ 0: lam is optimal
        side = dn.min_side(s)
        K = {i for i in range(n) if i in side}
        return K or None

    # start from the best single face (ratio exactly 1 when isolated)
    cur = min(
        (witness(X, [f]) for f in faces),
        key=lambda w: w.ratio,
    )
    while True:
        K = best_cut(cur.ratio)
        if K is None:
            break
        cand = witness(X, [faces[i] for i in K])
        if cand.ratio >= cur.ratio:
            break
        cur = cand
    # refine to the best connected component (same or better ratio)
    remaining = set(cur.faces)
    best = cur
    while remaining:
        comp = {remaining.pop()}
        q: deque[int] = deque(comp)
        while q:
            f = q.popleft()
            for g in X.face_neighbors(f):
                if g in remaining:
                    remaining.discard(g)
                    comp.add(g)
                    q.append(g)
        w = witness(X, comp)
        if w.ratio <= best.ratio:
            best = w
    return best


# ---------------------------------------------------------------------------
# degree-based lower bounds
# ---------------------------------------------------------------------------


def local_cheeger_term(X: PolygonalComplex, f: int) -> Fraction:
    """``(m_E(f)/M_E(f)) · (1 − 6/|∂f|)`` from true edge degrees."""
    weights = [X.true_edge_degree(e) - 1 for e in X.face_edges[f]]
    return Fraction(min(weights), max(weights)) * (
        1 - Fraction(6, X.boundary_length(f))
    )


@dataclass(frozen=True)
class CheegerBounds:
    """Degree-derived lower bounds for the isoperimetric constant, taken
    over the trusted faces (inner approximations of the true infima)."""

    bound1: Fraction  # inf (m_E/M_E)(1 − 6/|∂f|)
    bound2: Fraction  # inf (m_E − 2)/|f|
    certificate_bound: Fraction | None  # inf (|f|_+ − |f|_−)/|f| around the center
    center: int
    scope_size: int

    @property
    def best_valid(self) -> Fraction | None:
        """Largest bound that actually certifies positivity (None if none do)."""
        cands = [b for b in (self.bound1, self.bound2, self.certificate_bound)
                 if b is not None and b > 0]
        return max(cands, default=None)


def cheeger_lower_bounds(
    X: PolygonalComplex, center: int | None = None
) -> CheegerBounds:
    """The two degree infima and the forward-minus-backward certificate.

    bound1 and bound2 range over trusted faces.  The certificate ranges
    over trusted faces whose distance from the center and whose neighbors'
    distances are all certified; it is a valid lower bound only when
    nonnegative everywhere, and is reported as None when no face
    qualifies.
    """
    trusted = sorted(X.trusted_faces())
    if not trusted:
        raise UntrustedRegionError("no trusted faces")
    if center is None:
        center = int(X.meta.get("center", 0))
    b1 = None
    b2 = None
    for f in trusted:
        weights = [X.true_edge_degree(e) - 1 for e in X.face_edges[f]]
        t1 = Fraction(min(weights), max(weights)) * (
            1 - Fraction(6, X.boundary_length(f))
        )
        t2 = Fraction(min(weights) - 2, X.true_face_degree(f))
        b1 = t1 if b1 is None else min(b1, t1)
        b2 = t2 if b2 is None else min(b2, t2)

    m = face_metric(X)
    dist = m.distances_from(center)
    w = m.w_values()
    cert: Fraction | None = None
    for f in trusted:
        d = dist.get(f)
        if d is None or not X.face_complete(f):
            continue
        if d > w[center] + w[f] + 1:
            continue
        ok = True
        fwd = back = 0
        for g in m.adjacency[f]:
            dg = dist.get(g)
            if dg is None or dg > w[center] + w[g] + 1:
                ok = False
                break
            if dg == d + 1:
                fwd += 1
            elif dg == d - 1:
                back += 1
        if not ok:
            continue
        val = Fraction(fwd - back, X.true_face_degree(f))
        cert = val if cert is None else min(cert, val)
    return CheegerBounds(
        bound1=b1,
        bound2=b2,
        certificate_bound=cert,
        center=center,
        scope_size=len(trusted),
    )


def cheeger_at_infinity(
    X: PolygonalComplex,
    center: int | None = None,
    radius: int | None = None,
) -> tuple[Fraction | None, ...]:
    """For each inner radius r < R: the infimum of the local degree term
    over trusted faces at distance in (r, R] from the center.

    Infima over shrinking annuli, so the sequence is nondecreasing; it is
    a finite-window lower-bound proxy for the isoperimetric constant at
    infinity.  Entries are None when the annulus is empty.
    """
    if center is None:
        center = int(X.meta.get("center", 0))
    m = face_metric(X)
    trusted = X.trusted_faces()
    dist = m.distances_from(center, limit=radius)
    if radius is None:
        radius = max(
            (d for f, d in dist.items() if f in trusted), default=0
        )
    for f, d in dist.items():
        if d <= radius and f not in trusted:
            raise UntrustedRegionError(
                f"ball of radius {radius} around face {center} leaves the "
                f"trusted region (face {f})"
            )
    terms: dict[int, Fraction] = {}
    for f, d in dist.items():
        if d <= radius and f in trusted:
            terms[f] = local_cheeger_term(X, f)
    out: list[Fraction | None] = []
    for r in range(radius):
        vals = [t for f, t in terms.items() if r < dist[f] <= radius]
        out.append(min(vals) if vals else None)
    return tuple(out)
