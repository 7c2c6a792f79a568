"""Tetrahedral decompositions of the ball bounded by a triangulated sphere.

A decomposition is a set of vertex 4-subsets whose triangular faces cover
the sphere exactly once each and every other triangle twice or never.  The
module builds decompositions from flip paths, certifies that a candidate
really triangulates a ball, minimizes the tetrahedron count by exhaustive
branch and bound, and carries the counting arguments that turn face
arithmetic into lower bounds.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations
from math import ceil

from .polygon import PolygonTriangulation, FlipPath
from .sphere import SphereTriangulation, CycleInSphere, Triangle, Edge, glue

Tet = tuple[int, int, int, int]


def _faces_of(t: Tet) -> tuple[Triangle, ...]:
    a, b, c, d = t
    return ((b, c, d), (a, c, d), (a, b, d), (a, b, c))


def _edges_of(t: Tet) -> tuple[Edge, ...]:
    a, b, c, d = t
    return ((a, b), (a, c), (a, d), (b, c), (b, d), (c, d))


@dataclass(frozen=True)
class TetDecomposition:
    """A set of tetrahedra on vertices 0..vertex_count-1."""

    vertex_count: int
    tets: frozenset[Tet]

    @classmethod
    def of(cls, vertex_count: int, tets) -> "TetDecomposition":
        return cls(vertex_count, frozenset(tuple(sorted(t)) for t in tets))

    def __len__(self) -> int:
        return len(self.tets)

    def face_counts(self) -> Counter:
        counts: Counter = Counter()
        for t in self.tets:
            counts.update(_faces_of(t))
        return counts

    def boundary(self) -> frozenset[Triangle]:
        return frozenset(f for f, k in self.face_counts().items() if k == 1)

    def edges(self) -> frozenset[Edge]:
        return frozenset(e for t in self.tets for e in _edges_of(t))

    def extends(self, tau: SphereTriangulation) -> str | None:
        """Check the face parity contract against a target sphere."""
        counts = self.face_counts()
        for f in sorted(tau.triangles):
            if counts.get(f, 0) != 1:
                return f"sphere triangle {f} lies in {counts.get(f, 0)} tetrahedra, expected 1"
        for f, k in sorted(counts.items()):
            if f not in tau.triangles and k != 2:
                return f"interior triangle {f} lies in {k} tetrahedra, expected 0 or 2"
        return None


@dataclass(frozen=True)
class BallCertificate:
    """Numbers backing a successful ball validation.

    collapsible is None when greedy collapsing stalled: such complexes may
    still be balls, so they pass with the weaker certificate rather than
    being rejected.
    """

    vertices: int
    edges: int
    faces: int
    tets: int
    euler: int
    boundary_match: bool
    edge_links_ok: bool
    vertex_links_ok: bool
    collapsible: bool | None


def _ball_violation(tau: SphereTriangulation, tets: frozenset[Tet]) -> str | None:
    if not tets:
        return "the decomposition is empty"
    for t in sorted(tets):
        if len(set(t)) != 4:
            return f"tetrahedron {t} has repeated vertices"
        if not all(0 <= x < tau.vertex_count for x in t):
            return f"tetrahedron {t} uses vertices outside 0..{tau.vertex_count - 1}"
    counts: Counter = Counter()
    for t in tets:
        counts.update(_faces_of(t))
    for f, k in sorted(counts.items()):
        if k > 2:
            return f"triangle {f} lies in {k} tetrahedra"
    boundary = {f for f, k in counts.items() if k == 1}
    extra = sorted(boundary - tau.triangles)
    if extra:
        return f"triangle {extra[0]} is on the boundary but not on the sphere"
    missing = sorted(tau.triangles - boundary)
    if missing:
        return f"sphere triangle {missing[0]} is not on the boundary"

    # the dual graph must be connected through interior triangles
    face_tets: dict[Triangle, list[Tet]] = {}
    for t in sorted(tets):
        for f in _faces_of(t):
            face_tets.setdefault(f, []).append(t)
    start = min(tets)
    reached = {start}
    queue = deque([start])
    while queue:
        for f in _faces_of(queue.popleft()):
            for g in face_tets[f]:
                if g not in reached:
                    reached.add(g)
                    queue.append(g)
    if len(reached) != len(tets):
        return "the decomposition is disconnected"

    # each edge link must be one path (boundary edge) or one cycle (interior)
    boundary_edges = tau.edges()
    edge_tets: dict[Edge, list[Tet]] = {}
    for t in sorted(tets):
        for e in _edges_of(t):
            edge_tets.setdefault(e, []).append(t)
    for e, around in sorted(edge_tets.items()):
        link: dict[int, list[int]] = {}
        for t in around:
            x, y = (u for u in t if u not in e)
            link.setdefault(x, []).append(y)
            link.setdefault(y, []).append(x)
        degs = sorted(len(v) for v in link.values())
        on_boundary = e in boundary_edges
        if on_boundary:
            if degs.count(1) != 2 or any(d > 2 for d in degs):
                return f"the link of boundary edge {e} is not a single path"
        else:
            if any(d != 2 for d in degs):
                return f"the link of interior edge {e} is not a single cycle"
        start_v = min(
            (x for x in link if len(link[x]) == 1), default=min(link)
        )
        seen = {start_v}
        stack = [start_v]
        while stack:
            for w in link[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(link):
            kind = "path" if on_boundary else "cycle"
            return f"the link of edge {e} is not a single {kind}"

    # vertex links must be disks: connected surfaces with Euler number 1
    for v in range(tau.vertex_count):
        tris = [tuple(u for u in t if u != v) for t in sorted(tets) if v in t]
        if not tris:
            return f"vertex {v} lies in no tetrahedron"
        verts = {x for f in tris for x in f}
        edges = {e for f in tris for e in ((f[0], f[1]), (f[0], f[2]), (f[1], f[2]))}
        euler = len(verts) - len(edges) + len(tris)
        if euler != 1:
            return f"the link of vertex {v} has Euler number {euler}, expected 1"
        reached_f = {tris[0]}
        queue = deque([tris[0]])
        edge_tris: dict[Edge, list] = {}
        for f in tris:
            for e in ((f[0], f[1]), (f[0], f[2]), (f[1], f[2])):
                edge_tris.setdefault(e, []).append(f)
        while queue:
            f = queue.popleft()
            for e in ((f[0], f[1]), (f[0], f[2]), (f[1], f[2])):
                for g in edge_tris[e]:
                    if g not in reached_f:
                        reached_f.add(g)
                        queue.append(g)
        if len(reached_f) != len(tris):
            return f"the link of vertex {v} is disconnected"

    all_edges = set(edge_tets)
    euler = tau.vertex_count - len(all_edges) + len(counts) - len(tets)
    if euler != 1:
        return f"Euler characteristic is {euler}, expected 1"
    return None


def _collapses_to_point(tets: frozenset[Tet]) -> bool:
    # greedy free-face collapsing; success proves the complex is a ball,
    # a stall proves nothing
    complex_: set[frozenset] = set()
    for t in tets:
        s = frozenset(t)
        complex_.add(s)
        for k in (3, 2, 1):
            for sub in combinations(t, k):
                complex_.add(frozenset(sub))
    while True:
        cofacets: Counter = Counter()
        for s in complex_:
            if len(s) > 1:
                for sub in combinations(sorted(s), len(s) - 1):
                    cofacets[frozenset(sub)] += 1
        free = sorted(
            (s for s in complex_ if cofacets.get(s, 0) == 1),
            key=lambda s: (-len(s), sorted(s)),
        )
        if not free:
            break
        collapsed = False
        for s in free:
            if s not in complex_:
                continue
            # the pair must still be free under earlier removals this round
            live = [p for p in complex_ if len(p) == len(s) + 1 and s < p]
            if len(live) != 1:
                continue
            complex_.discard(s)
            complex_.discard(live[0])
            collapsed = True
        if not collapsed:
            break
    return len(complex_) == 1 and len(next(iter(complex_))) == 1


def _certificate(tau: SphereTriangulation, tets: frozenset[Tet]) -> BallCertificate:
    counts: Counter = Counter()
    for t in tets:
        counts.update(_faces_of(t))
    edges = {e for t in tets for e in _edges_of(t)}
    collapsible = True if _collapses_to_point(tets) else None
    return BallCertificate(
        vertices=tau.vertex_count,
        edges=len(edges),
        faces=len(counts),
        tets=len(tets),
        euler=tau.vertex_count - len(edges) + len(counts) - len(tets),
        boundary_match=True,
        edge_links_ok=True,
        vertex_links_ok=True,
        collapsible=collapsible,
    )


def validate_ball(tau: SphereTriangulation, decomposition: TetDecomposition) -> BallCertificate:
    """Certify that the decomposition triangulates the ball bounded by tau.

    Checks, in order: face parity against the sphere, dual connectivity,
    edge links, vertex links, and the Euler characteristic.  The first
    violation raises with the offending simplex.  Greedy collapsing is
    attempted last and recorded; a stall downgrades `collapsible` to None
    instead of failing, since greedy stalls do not disprove ballness.
    """
    tau.require_valid()
    if decomposition.vertex_count != tau.vertex_count:
        raise ValueError(
            f"vertex counts differ: {decomposition.vertex_count} vs {tau.vertex_count}"
        )
    msg = _ball_violation(tau, decomposition.tets)
    if msg is not None:
        raise ValueError(msg)
    return _certificate(tau, decomposition.tets)


def from_flip_path(
    top: PolygonTriangulation, bottom: PolygonTriangulation, path: FlipPath
) -> TetDecomposition:
    """Stack one tetrahedron per flip of a path from top to bottom.

    Each flip contributes the 4 vertices of its quadrilateral, with the
    removed diagonal on the top side and the inserted one below; the
    stack's boundary is the sphere glued from the two triangulations.
    """
    top.require_valid()
    bottom.require_valid()
    if path.start != top:
        raise ValueError("the path does not start at the top triangulation")
    if path.end() != bottom:
        raise ValueError("the path does not end at the bottom triangulation")
    tets = []
    seen = set()
    for removed, inserted in path.steps:
        quad = tuple(sorted(set(removed) | set(inserted)))
        if quad in seen:
            raise ValueError(
                f"two flips use the quadrilateral {quad}; the stacked tetrahedra would coincide"
            )
        seen.add(quad)
        tets.append(quad)
    common = sorted(top.diagonals & bottom.diagonals)
    if common:
        raise ValueError(f"the triangulations share diagonals {common}; split them apart first")
    return TetDecomposition.of(top.n, tets)


def no_three_face_tet(tau: SphereTriangulation) -> tuple[bool, Tet | None]:
    """Check that no 4 vertices carry 3 or more sphere triangles.

    Three triangles among 4 vertices pairwise share edges, so it is enough
    to scan, for every edge, the 4-subset spanned by its two triangles.
    Returns (False, witness 4-subset) when one exists.
    """
    tau.require_valid()
    for e, (f1, f2) in sorted(tau.edge_faces().items()):
        quad = tuple(sorted(set(f1) | set(f2)))
        carried = sum(
            1 for f in combinations(quad, 3) if f in tau.triangles
        )
        if carried >= 3:
            return False, quad
    return True, None


def is_bipyramid(tau: SphereTriangulation) -> bool:
    """True when tau is a double cone: two nonadjacent apexes over a cycle."""
    tau.require_valid()
    v_count = tau.vertex_count
    nbrs = tau.neighbors()
    deg = tau.degrees()
    k = v_count - 2
    for p in range(v_count):
        if deg[p] != k:
            continue
        for q in range(p + 1, v_count):
            if deg[q] != k or q in nbrs[p]:
                continue
            rest = [v for v in range(v_count) if v != p and v != q]
            if not all(
                p in nbrs[x] and q in nbrs[x] and deg[x] == 4 for x in rest
            ):
                continue
            # the remaining vertices must close into one cycle
            ring = {x: sorted(nbrs[x] - {p, q}) for x in rest}
            if any(len(ns) != 2 for ns in ring.values()):
                continue
            seen = {rest[0]}
            stack = [rest[0]]
            while stack:
                for w in ring[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == len(rest):
                return True
    return False


def counting_lower_bound(tau: SphereTriangulation) -> int:
    """A lower bound on the decomposition size from face counting.

    Every tetrahedron absorbs at most 2 sphere triangles (4 when 4-subsets
    carrying 3+ triangles exist), giving ceil(F/2) or ceil(F/4).  When F
    is even, hitting F/2 would force every tetrahedron to carry exactly 2
    adjacent sphere triangles; if additionally every such 4-subset has its
    opposite edge off the sphere, Euler arithmetic leaves exactly one
    interior edge shared by all tetrahedra, which shapes the sphere into a
    bipyramid.  When it is not one, the bound improves to F/2 + 1.
    """
    tau.require_valid()
    f_count = tau.face_count()
    ok, _ = no_three_face_tet(tau)
    if not ok:
        return ceil(f_count / 4)
    base = ceil(f_count / 2)
    if f_count % 2 != 0:
        return base
    edges = tau.edges()
    for e, (f1, f2) in sorted(tau.edge_faces().items()):
        opposite = tuple(sorted(set(f1) ^ set(f2)))
        if opposite in edges:
            return base
    if is_bipyramid(tau):
        return base
    return base + 1


@dataclass(frozen=True)
class MinTetResult:
    """Outcome of the exhaustive minimizer.

    `size` is the best validated decomposition found and `lower_bound` the
    best proven floor; `exact` means the two meet or the search ran to
    completion, so `size` is the true minimum.
    """

    size: int
    witness: TetDecomposition
    certificate: BallCertificate
    lower_bound: int
    exact: bool
    nodes: int
    complete: bool

    @property
    def status(self) -> str:
        return "exact" if self.exact else "bound"


class _SearchStop(Exception):
    pass


def min_tet(
    tau: SphereTriangulation,
    budget_tets: int | None = None,
    budget_nodes: int | None = None,
    stop_at: int | None = None,
) -> MinTetResult:
    """Minimize the number of tetrahedra over decompositions of the ball.

    Branch and bound over all vertex 4-subsets: repeatedly pick the
    neediest triangle (a sphere triangle not yet covered, or an interior
    triangle covered once), branch on the tetrahedra that can still extend
    it, and prune with ceil(remaining/k) where k is the most sphere
    triangles any tetrahedron absorbs.  Candidates that complete the face
    parity but fail the ball checks are rejected and the search continues.
    Decompositions use only the sphere's vertices.

    `budget_tets` caps the size searched for, `budget_nodes` the explored
    nodes, and `stop_at` ends the search once a decomposition at or below
    that size is validated; results found under an interrupted search are
    flagged through `complete` and `exact`.
    """
    from .sphere import cone_decomposition

    tau.require_valid()
    v_count = tau.vertex_count

    # cone incumbent: one tetrahedron per face missing the apex
    deg = tau.degrees()
    apex = min(v for v in range(v_count) if deg[v] == max(deg.values()))
    cone = cone_decomposition(tau, apex)
    assert _ball_violation(tau, cone.tets) is None
    best_tets = cone.tets
    best = len(cone)

    all_faces = list(combinations(range(v_count), 3))
    fid = {f: i for i, f in enumerate(all_faces)}
    is_tau = [f in tau.triangles for f in all_faces]
    all_tets = list(combinations(range(v_count), 4))
    tet_faces = [
        [fid[t[:i] + t[i + 1 :]] for i in range(4)] for t in all_tets
    ]
    extenders: list[list[int]] = [[] for _ in all_faces]
    for ti, fs in enumerate(tet_faces):
        for f in fs:
            extenders[f].append(ti)
    k0 = max(sum(1 for f in fs if is_tau[f]) for fs in tet_faces)

    count = [0] * len(all_faces)
    blocked = [0] * len(all_tets)
    used = [False] * len(all_tets)
    deficient = {i for i, t in enumerate(is_tau) if t}
    remaining = len(tau.triangles)
    nodes = 0
    complete = True
    cap = best if budget_tets is None else min(best, budget_tets + 1)

    def apply(ti: int, direction: int) -> None:
        nonlocal remaining
        used[ti] = direction > 0
        for f in tet_faces[ti]:
            count[f] += direction
            c = count[f]
            if is_tau[f]:
                if c == 1:
                    deficient.discard(f)
                    remaining -= 1
                    for t2 in extenders[f]:
                        blocked[t2] += 1
                else:
                    deficient.add(f)
                    remaining += 1
                    for t2 in extenders[f]:
                        blocked[t2] -= 1
            else:
                if c == 1:
                    if direction > 0:
                        deficient.add(f)
                    else:
                        deficient.add(f)
                        for t2 in extenders[f]:
                            blocked[t2] -= 1
                elif c == 2:
                    deficient.discard(f)
                    for t2 in extenders[f]:
                        blocked[t2] += 1
                else:
                    deficient.discard(f)

    def dfs(depth: int) -> None:
        nonlocal nodes, best, best_tets, complete
        nodes += 1
        if budget_nodes is not None and nodes > budget_nodes:
            complete = False
            raise _SearchStop
        threshold = min(best, cap)
        if depth + (remaining + k0 - 1) // k0 >= threshold:
            return
        if not deficient:
            tets = frozenset(
                all_tets[i] for i, u in enumerate(used) if u
            )
            if _ball_violation(tau, tets) is None:
                best = depth
                best_tets = tets
                if stop_at is not None and best <= stop_at:
                    complete = False
                    raise _SearchStop
            return
        pick, candidates = None, None
        for f in sorted(deficient):
            cands = [
                t for t in extenders[f] if not used[t] and blocked[t] == 0
            ]
            if candidates is None or len(cands) < len(candidates):
                pick, candidates = f, cands
                if not cands:
                    return
        for ti in candidates:
            apply(ti, 1)
            dfs(depth + 1)
            apply(ti, -1)

    try:
        dfs(0)
    except _SearchStop:
        pass

    counting = counting_lower_bound(tau)
    if complete and (budget_tets is None or best <= budget_tets):
        lower = best
        exact = True
    elif complete:
        # the capped search was exhausted: nothing at or under the cap
        lower = max(counting, budget_tets + 1)
        exact = best == lower
    else:
        lower = counting
        exact = best == lower
    witness = TetDecomposition(v_count, best_tets)
    return MinTetResult(
        size=best,
        witness=witness,
        certificate=_certificate(tau, best_tets),
        lower_bound=lower,
        exact=exact,
        nodes=nodes,
        complete=complete,
    )


def paired_cone_size(
    tau: SphereTriangulation, seam: CycleInSphere, v1: int, v2: int
) -> int:
    """Tetrahedron count of the paired construction, without building it:
    each side is coned from its chosen vertex and the leftover bipyramid
    over the seam takes one tetrahedron per seam edge."""
    side_a, side_b = seam.sides()
    int_a, int_b = seam.side_interiors()
    if v1 in int_b and v2 in int_a:
        v1, v2 = v2, v1
    deg = tau.degrees()
    return (len(side_a) - deg[v1]) + (len(side_b) - deg[v2]) + len(seam)


def paired_cone_decomposition(
    tau: SphereTriangulation, seam: CycleInSphere, v1: int, v2: int
) -> TetDecomposition:
    """Cone the two sides of a seam cycle from one inner vertex each.

    All triangles of a side not containing its chosen vertex are coned
    from it; the region the two cones leave uncovered is bounded by the
    two fans over the seam, a bipyramid with apexes v1 and v2.  It must be
    the pentagonal one, and is filled with the 5 tetrahedra through the
    v1-v2 axis.  The result is validated before it is returned.
    """
    tau.require_valid()
    seam.require_valid()
    if seam.sphere != tau:
        raise ValueError("the seam belongs to a different sphere")
    if v1 == v2:
        raise ValueError("the two cone vertices must differ")
    side_a, side_b = seam.sides()
    int_a, int_b = seam.side_interiors()
    if v1 in int_b and v2 in int_a:
        v1, v2 = v2, v1
    if v1 not in int_a:
        raise ValueError(f"vertex {v1} is not strictly inside a side of the seam")
    if v2 not in int_b:
        raise ValueError(f"vertex {v2} is not strictly inside the other side of the seam")
    tets = set()
    for vertex, side in ((v1, side_a), (v2, side_b)):
        for f in side:
            if vertex not in f:
                tets.add(tuple(sorted((vertex,) + f)))

    counts: Counter = Counter()
    for t in tets:
        counts.update(_faces_of(t))
    cover_boundary = {f for f, k in counts.items() if k % 2 == 1}
    residual = (tau.triangles - cover_boundary) | (cover_boundary - tau.triangles)
    length = len(seam)
    want = set()
    for i in range(length):
        a, b = seam.vertices[i], seam.vertices[(i + 1) % length]
        want.add(tuple(sorted((v1, a, b))))
        want.add(tuple(sorted((v2, a, b))))
    if length != 5 or residual != want:
        r_verts = {x for f in residual for x in f}
        r_edges = {
            e
            for f in residual
            for e in ((f[0], f[1]), (f[0], f[2]), (f[1], f[2]))
        }
        raise ValueError(
            "the residual region is not a pentagonal bipyramid; its face"
            f" vector is (V={len(r_verts)}, E={len(r_edges)}, F={len(residual)})"
            f" over a seam of length {length}"
        )
    for i in range(length):
        a, b = seam.vertices[i], seam.vertices[(i + 1) % length]
        tets.add(tuple(sorted((v1, v2, a, b))))
    out = TetDecomposition(tau.vertex_count, frozenset(tets))
    validate_ball(tau, out)
    return out
