"""Generators for the example families.

Planar tessellations ({p,q}, triangle-group tessellations, alternating
bipartite square tessellations) are grown face-by-face around a seed face
with a uniform gluing rule; products of trees, books of half-planes and the
spherical solids are built explicitly.  Every truncated output carries a
:class:`~curvcx.core.Truncation` with true-degree overrides for the cells cut
off by the finite build, so downstream consumers can distinguish certified
answers from boundary artifacts.
"""

from __future__ import annotations

import random
from collections import deque
from fractions import Fraction
from typing import Sequence

from ._budget import budget as _resolve_budget
from .core import PolygonalComplex, Truncation, build_complex
from .errors import BudgetExceededError, GeneratorError

__all__ = [
    "regular_tessellation",
    "coxeter_triangle",
    "bipartite_squares",
    "product_of_trees",
    "book",
    "spherical_solid",
    "FAMILIES",
]

FAMILIES = (
    "regular_pq",
    "coxeter_triangle",
    "product_trees",
    "book",
    "bipartite_squares",
    "spherical",
)


# ---------------------------------------------------------------------------
# patch growth engine for planar tessellations
# ---------------------------------------------------------------------------


class _Patch:
    """Grows a simply connected patch of a planar tessellation.

    Every face is a ``sides``-gon; every vertex carries a type with a target
    face count.  Faces are glued one at a time along a path of the rim; the
    glued path is extended across any rim vertex whose face count would reach
    its target, which folds that vertex into the interior with a closed link.
    This single rule realizes plain fans, absorption cascades, pocket
    closures and ear faces uniformly, and maintains the invariant that every
    rim vertex stays strictly below its target.
    """

    def __init__(
        self,
        sides: int,
        seed_types: Sequence[int],
        targets: Sequence[int],
        template: Sequence[int] | None,
        budget: int,
    ) -> None:
        p = sides
        if len(seed_types) != p:
            raise GeneratorError("seed typing must match the face size")
        self.p = p
        self.targets = tuple(targets)
        self.template = tuple(template) if template is not None else None
        self.budget = budget

        self.type_of = list(seed_types)
        self.count = [1] * p
        self.nxt = [(i + 1) % p for i in range(p)]
        self.prv = [(i - 1) % p for i in range(p)]
        self.on_rim = [True] * p
        self.faces: list[tuple[int, ...]] = [tuple(range(p))]
        self.edge_faces: dict[tuple[int, int], list[int]] = {}
        for i in range(p):
            self._note_edge(i, (i + 1) % p, 0)
        self.pending: deque[int] = deque()

    # -- small helpers ------------------------------------------------------

    def _target(self, v: int) -> int:
        return self.targets[self.type_of[v]]

    def _note_edge(self, a: int, b: int, face: int) -> None:
        key = (a, b) if a < b else (b, a)
        lst = self.edge_faces.setdefault(key, [])
        lst.append(face)
        if len(lst) > 2:
            raise GeneratorError(f"edge {key} acquired a third face; targets inconsistent")

    def _new_vertex(self, vtype: int) -> int:
        v = len(self.count)
        self.type_of.append(vtype)
        self.count.append(0)
        self.nxt.append(-1)
        self.prv.append(-1)
        self.on_rim.append(True)
        return v

    def _continue_types(self, known: list[int], k_new: int) -> list[int]:
        """Types for the new vertices of a face whose first vertices are typed
        ``known``, read cyclically against the face template."""
        tpl = self.template
        if tpl is None:
            return [0] * k_new
        p = self.p
        candidates = set()
        for offset in range(p):
            for direction in (1, -1):
                if all(tpl[(offset + direction * j) % p] == known[j] for j in range(len(known))):
                    candidates.add(
                        tuple(
                            tpl[(offset + direction * (len(known) + i)) % p]
                            for i in range(k_new)
                        )
                    )
        if not candidates:
            raise GeneratorError(f"no face typing matches rim types {known}")
        if len(candidates) > 1:
            raise GeneratorError(f"ambiguous face typing for rim types {known}")
        return list(candidates.pop())

    # -- the gluing primitive ------------------------------------------------

    def _add_face(self, u: int, v: int) -> None:
        """Glue one new face along the rim edge ``u -> v`` (``u = prv[v]``)."""
        if len(self.faces) >= self.budget:
            raise BudgetExceededError(
                f"face budget {self.budget} exhausted during growth"
            )
        glued = deque((u, v))
        end = v
        while self.count[end] + 1 == self._target(end):
            end = self.nxt[end]
            if end == glued[0]:
                raise GeneratorError(
                    "rim closed onto itself; the targets describe a finite "
                    "(spherical) tessellation"
                )
            glued.append(end)
        front = u
        while self.count[front] + 1 == self._target(front):
            front = self.prv[front]
            if front == glued[-1]:
                raise GeneratorError(
                    "rim closed onto itself; the targets describe a finite "
                    "(spherical) tessellation"
                )
            glued.appendleft(front)

        path = list(glued)
        L = len(path)
        if L > self.p:
            raise GeneratorError(
                f"forced gluing path of {L} vertices exceeds face size {self.p}"
            )
        k_new = self.p - L
        new_types = self._continue_types([self.type_of[x] for x in path], k_new)
        fresh = [self._new_vertex(t) for t in new_types]

        face_id = len(self.faces)
        cycle = tuple(path) + tuple(fresh)
        self.faces.append(cycle)
        for i, a in enumerate(cycle):
            self._note_edge(a, cycle[(i + 1) % self.p], face_id)
            self.count[a] += 1
        if k_new == 0:
            # the face closes a pocket; its one new edge must really be new
            key = (path[0], path[-1]) if path[0] < path[-1] else (path[-1], path[0])
            if len(self.edge_faces[key]) != 1:
                raise GeneratorError("pocket closure hit an existing edge")

        # rim update: the old path front..end is replaced by
        # front -> fresh[k-1] -> ... -> fresh[0] -> end
        for x in path[1:-1]:
            self.on_rim[x] = False
            if self.count[x] != self._target(x):
                raise GeneratorError(
                    f"vertex {x} folded into the interior below its target"
                )
        chain = [path[0]] + list(reversed(fresh)) + [path[-1]]
        for a, b in zip(chain, chain[1:]):
            self.nxt[a] = b
            self.prv[b] = a
        for x in (path[0], path[-1]):
            if self.count[x] >= self._target(x):
                raise GeneratorError(f"rim vertex {x} reached its target")
            if self.count[x] == self._target(x) - 1:
                self.pending.append(x)

    # -- growth loop ---------------------------------------------------------

    def _forced_length(self, w: int) -> int:
        """Length of the gluing path that ``_add_face(prv[w], w)`` would be
        forced to cover, without mutating anything."""
        first = self.prv[w]
        length = 2
        end = w
        while self.count[end] + 1 == self._target(end):
            end = self.nxt[end]
            length += 1
            if end == first or length > self.p:
                return length
        front = first
        while self.count[front] + 1 == self._target(front):
            front = self.prv[front]
            length += 1
            if front == end or length > self.p:
                return length
        return length

    def _drain_pockets(self) -> None:
        """Glue every fully determined face at rim vertices one short of
        their target.

        Such a vertex already has all its edges, so its one missing face
        spans both of its rim edges.  When a run of these vertices forces
        the whole boundary of that face (no free slots left), the face is
        determined by the current state and must be glued before a fan
        grows past it and pins a fresh vertex where it belongs.  Determined
        closures add no new vertices, so cascades terminate.  A vertex whose
        missing face still has free slots is left alone; a fan reaching it
        later folds it by path extension.
        """
        while self.pending:
            w = self.pending.popleft()
            if (
                self.on_rim[w]
                and self.count[w] == self._target(w) - 1
                and self._forced_length(w) == self.p
            ):
                self._add_face(self.prv[w], w)

    def complete_vertex(self, v: int) -> None:
        """Add faces around ``v`` until its star is full (link a closed cycle)."""
        self._drain_pockets()
        while self.count[v] < self._target(v):
            self._add_face(self.prv[v], v)
            self._drain_pockets()

    def _open_layer(self) -> tuple[int, list[int]] | None:
        """The nearest dual-distance layer of faces that are not yet fully
        closed (an unshared edge or a vertex below target), as
        ``(distance, face ids)``; None once every built face is closed."""
        n = len(self.faces)
        open_face = [False] * n
        for lst in self.edge_faces.values():
            if len(lst) == 1:
                open_face[lst[0]] = True
        for fi, cyc in enumerate(self.faces):
            if not open_face[fi] and any(
                self.count[x] != self._target(x) for x in cyc
            ):
                open_face[fi] = True
        dist = [-1] * n
        dist[0] = 0
        q = deque([0])
        while q:
            f = q.popleft()
            cyc = self.faces[f]
            for i, a in enumerate(cyc):
                b = cyc[(i + 1) % self.p]
                key = (a, b) if a < b else (b, a)
                for g in self.edge_faces[key]:
                    if dist[g] < 0:
                        dist[g] = dist[f] + 1
                        q.append(g)
        best = min((dist[f] for f in range(n) if open_face[f]), default=None)
        if best is None:
            return None
        return best, [f for f in range(n) if open_face[f] and dist[f] == best]

    def grow(self, radius: int) -> None:
        """Close faces outward, one dual-distance layer at a time, until
        every face within dual distance ``radius + 2`` of the seed face is
        closed (all edges shared, all vertex stars full).

        Closing the layer at distance w only creates faces at distance > w,
        so the open frontier strictly recedes and the loop terminates after
        about ``radius`` passes.
        """
        while True:
            layer = self._open_layer()
            if layer is None:
                raise GeneratorError(
                    "the patch closed into a finite (spherical) tessellation"
                )
            w, faces = layer
            if w > radius + 2:
                return
            for f in faces:
                for v in self.faces[f]:
                    self.complete_vertex(v)


def _finish_patch(
    patch: _Patch, radius: int, meta: dict
) -> PolygonalComplex:
    """Assemble a grown patch into a validated complex with truncation data."""
    n_vertices = len(patch.count)
    X = build_complex(
        n_vertices,
        patch.faces,
        apartments=[range(len(patch.faces))],
        meta=meta,
    )
    # trusted ball around the seed face
    dist = [-1] * len(X.faces)
    dist[0] = 0
    q = deque([0])
    while q:
        f = q.popleft()
        for g in X.face_neighbors(f):
            if dist[g] < 0:
                dist[g] = dist[f] + 1
                q.append(g)
    trusted = frozenset(f for f, d in enumerate(dist) if 0 <= d <= radius)
    v_over = {
        v: patch._target(v)
        for v in range(n_vertices)
        if patch.count[v] < patch._target(v)
    }
    e_over = {
        X.edge_index[key]: 2
        for key, lst in patch.edge_faces.items()
        if len(lst) == 1
    }
    X.truncation = Truncation(
        trusted_faces=trusted,
        true_vertex_degree=v_over,
        true_edge_degree=e_over,
    )
    for f in trusted:
        if not X.face_complete(f) or any(not X.vertex_complete(v) for v in X.faces[f]):
            raise GeneratorError(
                f"internal error: trusted face {f} is not fully closed"
            )
    return X


# ---------------------------------------------------------------------------
# planar families
# ---------------------------------------------------------------------------

_SPHERICAL_PQ = {
    (3, 3): "tetrahedron",
    (4, 3): "cube",
    (3, 4): "octahedron",
    (5, 3): "dodecahedron",
    (3, 5): "icosahedron",
}


def regular_tessellation(
    p: int, q: int, radius: int, budget: int | None = None
) -> PolygonalComplex:
    """Tessellation by p-gons with q faces around every vertex, built as a
    trusted ball of radius ``radius`` around a center face.

    Spherical parameter pairs (1/p + 1/q > 1/2) return the corresponding
    finite solid instead of a grown patch.
    """
    if p < 3 or q < 3:
        raise GeneratorError("regular tessellation needs p >= 3 and q >= 3")
    if radius < 1:
        raise GeneratorError("radius must be >= 1")
    if Fraction(1, p) + Fraction(1, q) > Fraction(1, 2):
        kind = _SPHERICAL_PQ.get((p, q))
        if kind is None:
            raise GeneratorError(f"({p},{q}) is spherical but not a known solid")
        return spherical_solid(kind)
    patch = _Patch(
        sides=p,
        seed_types=[0] * p,
        targets=(q,),
        template=None,
        budget=_resolve_budget(budget),
    )
    patch.grow(radius)
    meta = {"family": "regular_pq", "p": p, "q": q, "radius": radius, "center": 0}
    return _finish_patch(patch, radius, meta)


def coxeter_triangle(
    r: int, s: int, t: int, radius: int, budget: int | None = None
) -> PolygonalComplex:
    """Triangle tessellation whose vertices 3-color into classes of degree
    2r, 2s, 2t, each triangle having one vertex of each class.

    Requires 1/r + 1/s + 1/t <= 1 (the flat or negatively curved cases); the
    remaining parameter triples describe finite tessellations and are
    rejected.
    """
    if min(r, s, t) < 2:
        raise GeneratorError("triangle tessellation needs r, s, t >= 2")
    if radius < 1:
        raise GeneratorError("radius must be >= 1")
    if Fraction(1, r) + Fraction(1, s) + Fraction(1, t) > 1:
        raise GeneratorError(
            f"(r,s,t)=({r},{s},{t}) describes a finite (spherical) tessellation"
        )
    patch = _Patch(
        sides=3,
        seed_types=[0, 1, 2],
        targets=(2 * r, 2 * s, 2 * t),
        template=(0, 1, 2),
        budget=_resolve_budget(budget),
    )
    patch.grow(radius)
    meta = {
        "family": "coxeter_triangle",
        "r": r,
        "s": s,
        "t": t,
        "radius": radius,
        "center": 0,
    }
    return _finish_patch(patch, radius, meta)


def bipartite_squares(
    n: int, radius: int, budget: int | None = None
) -> PolygonalComplex:
    """Square tessellation whose vertex degrees alternate 2n and 3 around
    every face (the two classes form a bipartition)."""
    if n < 3:
        raise GeneratorError("bipartite square tessellation needs n >= 3")
    if radius < 1:
        raise GeneratorError("radius must be >= 1")
    patch = _Patch(
        sides=4,
        seed_types=[0, 1, 0, 1],
        targets=(2 * n, 3),
        template=(0, 1, 0, 1),
        budget=_resolve_budget(budget),
    )
    patch.grow(radius)
    meta = {"family": "bipartite_squares", "n": n, "radius": radius, "center": 0}
    return _finish_patch(patch, radius, meta)


# ---------------------------------------------------------------------------
# product of trees
# ---------------------------------------------------------------------------


def _rooted_tree(degree: int, depth: int) -> tuple[list[tuple[int, int]], list[int], list[list[int]]]:
    """Ball of radius ``depth`` in the ``degree``-regular tree.

    Returns (edges as (parent, child) pairs, vertex depths, children edge ids
    per vertex including the upward edge so that ``incident[v]`` lists every
    edge id at v).
    """
    depths = [0]
    edges: list[tuple[int, int]] = []
    incident: list[list[int]] = [[]]
    frontier = [0]
    for d in range(1, depth + 1):
        new_frontier = []
        for u in frontier:
            n_children = degree if u == 0 else degree - 1
            for _ in range(n_children):
                v = len(depths)
                depths.append(d)
                incident.append([])
                eid = len(edges)
                edges.append((u, v))
                incident[u].append(eid)
                incident[v].append(eid)
                new_frontier.append(v)
        frontier = new_frontier
    return edges, depths, incident


def product_of_trees(
    r: int,
    s: int,
    radius: int,
    apartments: int = 6,
    seed: int = 0,
    budget: int | None = None,
) -> PolygonalComplex:
    """Square complex on pairs of tree vertices within distance ``radius`` of
    the roots of the r-regular and s-regular trees.

    Faces are pairs (tree edge, tree edge); interior vertices have degree
    r + s and their links are complete bipartite.  The apartment system of
    the infinite complex (all products of two-sided geodesics through the
    root edges) is infinite; a seeded sample of ``apartments`` geodesic pairs
    is attached, flagged in ``meta`` as sampled.
    """
    if r < 2 or s < 2:
        raise GeneratorError("tree product needs r, s >= 2")
    if radius < 1:
        raise GeneratorError("radius must be >= 1")
    x_edges, x_depth, x_inc = _rooted_tree(r, radius)
    y_edges, y_depth, y_inc = _rooted_tree(s, radius)
    cap = _resolve_budget(budget)
    if len(x_edges) * len(y_edges) > cap:
        raise BudgetExceededError(
            f"{len(x_edges)}x{len(y_edges)} faces exceed the budget {cap}"
        )

    ny = len(y_depth)

    def vid(x: int, y: int) -> int:
        return x * ny + y

    faces = []
    for (px, cx) in x_edges:
        for (py, cy) in y_edges:
            faces.append((vid(px, py), vid(cx, py), vid(cx, cy), vid(px, cy)))

    # apartments: sampled geodesic pairs through the root edges
    rng = random.Random(seed)

    def sample_line(edges, depths, incident) -> set[int]:
        line = {0}  # root edge id 0 = (0, first child)
        for start in edges[0]:  # extend away from both endpoints of edge 0
            prev_eid = 0
            v = start
            while True:
                outward = [
                    eid for eid in incident[v]
                    if eid != prev_eid and depths[max(edges[eid])] > depths[v]
                ]
                if not outward:
                    break
                eid = rng.choice(outward)
                line.add(eid)
                prev_eid = eid
                v = max(edges[eid], key=lambda w: depths[w])
        return line

    ey_count = len(y_edges)
    apartment_sets = []
    for _ in range(max(0, apartments)):
        lx = sample_line(x_edges, x_depth, x_inc)
        ly = sample_line(y_edges, y_depth, y_inc)
        apartment_sets.append(
            sorted(ix * ey_count + iy for ix in lx for iy in ly)
        )

    meta = {
        "family": "product_trees",
        "r": r,
        "s": s,
        "radius": radius,
        "seed": seed,
        "apartments_sampled": True,
        "center": 0,
    }
    X = build_complex(
        len(x_depth) * ny, faces, apartments=apartment_sets, meta=meta
    )

    # truncation: every cell's true degree is known; overrides mark rim cells
    e_over: dict[int, int] = {}
    for eid, (u, v) in enumerate(X.edges):
        xu, yu = divmod(u, ny)
        xv, yv = divmod(v, ny)
        true_deg = s if yu == yv else r  # an x-move edge lies in s faces
        if len(X.edge_faces[eid]) < true_deg:
            e_over[eid] = true_deg
    v_over: dict[int, int] = {}
    for x in range(len(x_depth)):
        for y in range(ny):
            # full star: one square per (tree-edge, tree-edge) pair
            if len(X.vertex_faces[vid(x, y)]) < r * s:
                v_over[vid(x, y)] = r + s
    X.truncation = Truncation(
        trusted_faces=frozenset(range(len(faces))),
        true_vertex_degree=v_over,
        true_edge_degree=e_over,
    )
    return X


# ---------------------------------------------------------------------------
# books of half-planes
# ---------------------------------------------------------------------------


def book(k: int, radius: int, budget: int | None = None) -> PolygonalComplex:
    """``k`` half-plane square tessellations glued along a common spine line.

    Spine edges lie in k faces and spine vertices have degree k + 2; the
    apartment system is the full set of C(k,2) page-pair planes.  Faces are
    built on the diamond window |i| + j <= radius + 3 of each page, which
    keeps every face within dual distance radius + 2 of the center fully
    closed.
    """
    if k < 2:
        raise GeneratorError("a book needs k >= 2 pages")
    if radius < 1:
        raise GeneratorError("radius must be >= 1")
    window = radius + 3

    vids: dict[tuple, int] = {}

    def vid(i: int, j: int, page: int) -> int:
        key = (i, 0, -1) if j == 0 else (i, j, page)  # spine vertices shared
        out = vids.get(key)
        if out is None:
            out = len(vids)
            vids[key] = out
        return out

    faces = []
    face_meta = []  # (i, j, page) per face
    for page in range(k):
        for i in range(-window, window + 1):
            span = window - abs(i)
            for j in range(0, span):  # face (i,j): needs |i| + j <= window - 1
                faces.append(
                    (
                        vid(i, j, page),
                        vid(i + 1, j, page),
                        vid(i + 1, j + 1, page),
                        vid(i, j + 1, page),
                    )
                )
                face_meta.append((i, j, page))
    cap = _resolve_budget(budget)
    if len(faces) > cap:
        raise BudgetExceededError(f"{len(faces)} faces exceed the budget {cap}")

    by_page: dict[int, list[int]] = {p: [] for p in range(k)}
    center = None
    for fi, (i, j, page) in enumerate(face_meta):
        by_page[page].append(fi)
        if (i, j, page) == (0, 0, 0):
            center = fi
    apartment_sets = [
        sorted(by_page[a] + by_page[b])
        for a in range(k)
        for b in range(a + 1, k)
    ]

    meta = {"family": "book", "k": k, "radius": radius, "center": center}
    X = build_complex(len(vids), faces, apartments=apartment_sets, meta=meta)

    spine = {}  # vertex id -> spine coordinate i
    for key, v in vids.items():
        if key[2] == -1:
            spine[v] = key[0]
    e_over = {}
    for eid in range(len(X.edges)):
        u, v = X.edges[eid]
        true_deg = k if (u in spine and v in spine) else 2
        if len(X.edge_faces[eid]) < true_deg:
            e_over[eid] = true_deg
    v_over = {}
    for key, v in vids.items():
        if key[2] == -1:
            expect, degree = 2 * k, k + 2
        else:
            expect, degree = 4, 4
        if len(X.vertex_faces[v]) < expect:
            v_over[v] = degree
    X.truncation = Truncation(
        trusted_faces=frozenset(range(len(faces))),
        true_vertex_degree=v_over,
        true_edge_degree=e_over,
    )
    return X


# ---------------------------------------------------------------------------
# spherical solids
# ---------------------------------------------------------------------------


def _tetrahedron():
    return 4, [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]


def _cube():
    # vertex index = x + 2y + 4z over {0,1}^3
    return 8, [
        (0, 1, 3, 2),
        (4, 6, 7, 5),
        (0, 2, 6, 4),
        (1, 5, 7, 3),
        (0, 4, 5, 1),
        (2, 3, 7, 6),
    ]


def _octahedron():
    faces = []
    for i in range(4):
        j = 1 + (i + 1) % 4
        faces.append((0, 1 + i, j))
        faces.append((5, j, 1 + i))
    return 6, faces


def _icosahedron():
    N, S = 0, 11
    t = [1 + i for i in range(5)]
    b = [6 + i for i in range(5)]
    faces = []
    for i in range(5):
        i1 = (i + 1) % 5
        faces.append((N, t[i], t[i1]))
        faces.append((t[i], b[i], t[i1]))
        faces.append((t[i1], b[i], b[i1]))
        faces.append((S, b[i1], b[i]))
    return 12, faces


def _dodecahedron():
    # dual of the icosahedron: faces = cycles of icosahedral faces around a vertex
    nv, ico_faces = _icosahedron()
    at_vertex: dict[int, list[int]] = {v: [] for v in range(nv)}
    for fi, cyc in enumerate(ico_faces):
        for v in cyc:
            at_vertex[v].append(fi)
    face_sets = [frozenset(c) for c in ico_faces]
    faces = []
    for v in range(nv):
        ring = at_vertex[v]
        cycle = [ring[0]]
        while len(cycle) < len(ring):
            cur = face_sets[cycle[-1]]
            prev = face_sets[cycle[-2]] if len(cycle) > 1 else None
            for g in ring:
                if g in cycle:
                    continue
                if len(cur & face_sets[g]) == 2:  # shares an edge through v
                    cycle.append(g)
                    break
            else:
                raise GeneratorError("icosahedral vertex star failed to close")
            if prev is not None and len(face_sets[cycle[-1]] & prev) == 2 and len(cycle) == 2:
                pass
        faces.append(tuple(cycle))
    return len(ico_faces), faces


def _prism(n: int):
    """n-gonal prism: two n-gon caps joined by a band of n squares."""
    top = list(range(n))
    bot = [n + i for i in range(n)]
    faces: list[tuple[int, ...]] = [tuple(top), tuple(reversed(bot))]
    for i in range(n):
        j = (i + 1) % n
        faces.append((top[i], top[j], bot[j], bot[i]))
    return 2 * n, faces


def _antiprism(n: int):
    """n-gonal antiprism: two twisted n-gon caps joined by 2n triangles."""
    top = list(range(n))
    bot = [n + i for i in range(n)]
    faces: list[tuple[int, ...]] = [tuple(top), tuple(reversed(bot))]
    for i in range(n):
        j = (i + 1) % n
        faces.append((top[i], top[j], bot[i]))
        faces.append((top[j], bot[j], bot[i]))
    return 2 * n, faces


def spherical_solid(kind: str, n: int | None = None) -> PolygonalComplex:
    """Finite sphere tessellations: the five regular solids plus the prism
    and antiprism families, parameterized by the cap size ``n >= 3``."""
    fixed = {
        "tetrahedron": _tetrahedron,
        "cube": _cube,
        "octahedron": _octahedron,
        "dodecahedron": _dodecahedron,
        "icosahedron": _icosahedron,
    }
    if kind in fixed:
        nv, faces = fixed[kind]()
        meta = {"family": "spherical", "kind": kind}
    elif kind in ("prism", "antiprism"):
        if n is None or n < 3:
            raise GeneratorError(f"{kind} needs a wheel size n >= 3")
        nv, faces = (_prism if kind == "prism" else _antiprism)(n)
        meta = {"family": "spherical", "kind": kind, "n": n}
    else:
        raise GeneratorError(f"unknown solid kind {kind!r}")
    return build_complex(nv, faces, meta=meta)
