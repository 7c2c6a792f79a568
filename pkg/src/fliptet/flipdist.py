"""Exact flip distances between polygon triangulations.

Three interchangeable engines work on canonical frozenset states: plain
breadth-first search (with a deterministic witness walk), bidirectional
BFS (the default), and iterative deepening with the admissible
set-difference heuristic. Instances are first cut along common
diagonals, which never changes the distance, only the search size.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from random import Random

from .polygon import (
    Diagonal,
    FlipPath,
    PolygonTriangulation,
    pair,
    random_triangulation,
    split_along,
)

STRATEGIES = ("bfs", "bidirectional", "iterative-deepening")


class BudgetExceeded(RuntimeError):
    """Raised when a search runs out of its node or time budget."""

    def __init__(self, message: str, lower_bound: int = 0):
        super().__init__(message)
        self.lower_bound = lower_bound


@dataclass
class SearchStats:
    nodes: int = 0
    frontier_peak: int = 0
    seconds: float = 0.0

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.frontier_peak = max(self.frontier_peak, other.frontier_peak)
        self.seconds += other.seconds


@dataclass
class DistanceResult:
    """Outcome of an exact search.

    status is "exact" when the distance is proven; a search that ran out
    of budget reports status "budget" with the best proven lower bound
    and no witness.
    """

    distance: int | None
    path: FlipPath | None
    stats: SearchStats
    status: str = "exact"
    lower_bound: int = 0

    @property
    def exact(self) -> bool:
        return self.status == "exact"


def lower_bound(t1: PolygonTriangulation, t2: PolygonTriangulation) -> int:
    """Admissible bound: every non-shared diagonal must be flipped."""
    if t1.n != t2.n:
        raise ValueError("triangulations live on different polygons")
    return len(t1.diagonals - t2.diagonals)


# ---------------------------------------------------------------- engines
#
# Engine states are frozensets of diagonals; adjacency is rebuilt per
# state, which is cheap at the polygon sizes exact search can handle.


class _Budget:
    def __init__(self, node_budget: int | None, time_budget: float | None):
        self.node_budget = node_budget
        self.deadline = None if time_budget is None else time.monotonic() + time_budget
        self.nodes = 0

    def spend(self, lower: int) -> None:
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise BudgetExceeded(
                f"node budget {self.node_budget} exhausted", lower
            )
        if self.deadline is not None and self.nodes % 256 == 0:
            if time.monotonic() > self.deadline:
                raise BudgetExceeded("time budget exhausted", lower)


def _moves(n: int, state: frozenset) -> list[tuple[Diagonal, Diagonal, frozenset]]:
    """All flips from a state: (removed, inserted, next state), sorted."""
    adj: dict[int, set[int]] = {}
    for v in range(n):
        adj[v] = {(v + 1) % n, (v - 1) % n}
    for a, b in state:
        adj[a].add(b)
        adj[b].add(a)
    out = []
    for d in sorted(state):
        a, b = d
        x, y = sorted(adj[a] & adj[b])
        inserted = (x, y)
        out.append((d, inserted, state - {d} | {inserted}))
    return out


def _walk_witness(
    n: int,
    start: PolygonTriangulation,
    source: frozenset,
    target: frozenset,
    dist: dict[frozenset, int],
) -> FlipPath:
    # greedy descent over exact distance labels; ties broken by the
    # lexicographically smallest removed diagonal
    steps = []
    cur = source
    while cur != target:
        d = dist[cur]
        for removed, inserted, nxt in _moves(n, cur):
            if dist.get(nxt, -1) == d - 1:
                steps.append((removed, inserted))
                cur = nxt
                break
        else:
            raise AssertionError("distance labels admit no descent")
    return FlipPath(n, start, tuple(steps))


def _bfs(
    n: int,
    source: frozenset,
    target: frozenset,
    budget: _Budget,
    stats: SearchStats,
) -> dict[frozenset, int]:
    """Exact distance labels from the target, out to the source's level."""
    dist = {target: 0}
    frontier = [target]
    level = 0
    while source not in dist:
        if not frontier:
            raise AssertionError("flip graph is connected")
        nxt = []
        for state in frontier:
            budget.spend(lower=level + 1)
            for _, _, new in _moves(n, state):
                if new not in dist:
                    dist[new] = level + 1
                    nxt.append(new)
        frontier = nxt
        level += 1
        stats.frontier_peak = max(stats.frontier_peak, len(frontier))
    return dist


def _bidirectional(
    n: int,
    source: frozenset,
    target: frozenset,
    budget: _Budget,
    stats: SearchStats,
) -> tuple[int, list[tuple[Diagonal, Diagonal]]]:
    """Meet-in-the-middle BFS; returns distance and witness steps."""
    fdist = {source: 0}
    bdist = {target: 0}
    fparent: dict[frozenset, tuple] = {}
    bparent: dict[frozenset, tuple] = {}
    ffrontier, bfrontier = [source], [target]
    fdepth = bdepth = 0
    best: int | None = None
    meets: set[frozenset] = set()
    if source == target:
        return 0, []

    def proven_lower() -> int:
        # levels fully expanded on both sides settle everything shorter
        base = fdepth + bdepth + 1
        return base if best is None else min(best, base)

    def expand(frontier, dist, parent, other, depth):
        nonlocal best
        nxt = []
        for state in sorted(frontier, key=sorted):
            budget.spend(lower=proven_lower())
            for removed, inserted, new in _moves(n, state):
                if new not in dist:
                    dist[new] = depth + 1
                    parent[new] = (state, removed, inserted)
                    nxt.append(new)
                    if new in other:
                        total = dist[new] + other[new]
                        if best is None or total < best:
                            best = total
                            meets.clear()
                        if total == best:
                            meets.add(new)
        stats.frontier_peak = max(stats.frontier_peak, len(nxt))
        return nxt

    while best is None or best > fdepth + bdepth:
        if not ffrontier and not bfrontier:
            raise AssertionError("flip graph is connected")
        forward = len(ffrontier) <= len(bfrontier) and ffrontier
        if forward:
            ffrontier = expand(ffrontier, fdist, fparent, bdist, fdepth)
            fdepth += 1
        else:
            bfrontier = expand(bfrontier, bdist, bparent, fdist, bdepth)
            bdepth += 1

    meet = min(meets, key=sorted)
    fore: list[tuple[Diagonal, Diagonal]] = []
    cur = meet
    while cur != source:
        prev, removed, inserted = fparent[cur]
        fore.append((removed, inserted))
        cur = prev
    fore.reverse()
    cur = meet
    while cur != target:
        prev, removed, inserted = bparent[cur]
        # backward edges replay forward with the roles swapped
        fore.append((inserted, removed))
        cur = prev
    return best, fore


def _iddfs(
    n: int,
    source: frozenset,
    target: frozenset,
    budget: _Budget,
    stats: SearchStats,
) -> tuple[int, list[tuple[Diagonal, Diagonal]]]:
    """Iterative deepening with the set-difference heuristic."""

    def h(state: frozenset) -> int:
        return len(state - target)

    threshold = h(source)
    on_path = {source}
    steps: list[tuple[Diagonal, Diagonal]] = []

    def dfs(state: frozenset, g: int, bound: int) -> int | None:
        budget.spend(lower=threshold)
        f = g + h(state)
        if f > bound:
            return f
        if state == target:
            return -1
        smallest_overflow: int | None = None
        for removed, inserted, new in _moves(n, state):
            if new in on_path:
                continue
            on_path.add(new)
            steps.append((removed, inserted))
            sub = dfs(new, g + 1, bound)
            if sub == -1:
                return -1
            on_path.discard(new)
            steps.pop()
            if sub is not None and (
                smallest_overflow is None or sub < smallest_overflow
            ):
                smallest_overflow = sub
        return smallest_overflow

    if source == target:
        return 0, []
    while True:
        outcome = dfs(source, 0, threshold)
        if outcome == -1:
            return len(steps), list(steps)
        if outcome is None:
            raise AssertionError("flip graph is connected")
        stats.frontier_peak = max(stats.frontier_peak, len(on_path))
        threshold = outcome


def _search_one(
    t1: PolygonTriangulation,
    t2: PolygonTriangulation,
    strategy: str,
    budget: _Budget,
) -> DistanceResult:
    n = t1.n
    stats = SearchStats()
    began = time.monotonic()
    try:
        if strategy == "bfs":
            dist = _bfs(n, t1.diagonals, t2.diagonals, budget, stats)
            path = _walk_witness(n, t1, t1.diagonals, t2.diagonals, dist)
            distance = dist[t1.diagonals]
        elif strategy == "bidirectional":
            distance, steps = _bidirectional(
                n, t1.diagonals, t2.diagonals, budget, stats
            )
            path = FlipPath(n, t1, tuple(steps))
        elif strategy == "iterative-deepening":
            distance, steps = _iddfs(n, t1.diagonals, t2.diagonals, budget, stats)
            path = FlipPath(n, t1, tuple(steps))
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
    except BudgetExceeded as exc:
        stats.nodes = budget.nodes
        stats.seconds = time.monotonic() - began
        lo = max(exc.lower_bound, lower_bound(t1, t2))
        return DistanceResult(None, None, stats, status="budget", lower_bound=lo)
    stats.nodes = budget.nodes
    stats.seconds = time.monotonic() - began
    return DistanceResult(distance, path, stats, lower_bound=distance)


def _concatenate_region_paths(
    t1: PolygonTriangulation, pieces: list[tuple[FlipPath, tuple[int, ...]]]
) -> FlipPath:
    steps: list[tuple[Diagonal, Diagonal]] = []
    for path, vmap in pieces:
        for removed, inserted in path.steps:
            steps.append(
                (
                    pair(vmap[removed[0]], vmap[removed[1]]),
                    pair(vmap[inserted[0]], vmap[inserted[1]]),
                )
            )
    return FlipPath(t1.n, t1, tuple(steps))


def flip_distance(
    t1: PolygonTriangulation,
    t2: PolygonTriangulation,
    strategy: str = "bidirectional",
    use_splitting: bool = True,
    node_budget: int | None = None,
    time_budget: float | None = None,
) -> DistanceResult:
    """Exact flip distance with a replayable witness path.

    Common diagonals are never flipped on a shortest path, so by default
    the instance is cut along them and the regions are solved separately;
    the distance is the sum and the witness is the concatenation.
    """
    if t1.n != t2.n:
        raise ValueError("triangulations live on different polygons")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    t1.require_valid()
    t2.require_valid()
    budget = _Budget(node_budget, time_budget)
    if t1.diagonals == t2.diagonals:
        return DistanceResult(0, FlipPath(t1.n, t1, ()), SearchStats())
    if not use_splitting or not (t1.diagonals & t2.diagonals):
        return _search_one(t1, t2, strategy, budget)

    begin = time.monotonic()
    stats = SearchStats()
    total = 0
    pieces = []
    for sub1, sub2, vmap in split_along(t1, t2):
        res = _search_one(sub1, sub2, strategy, budget)
        stats.merge(res.stats)
        if not res.exact:
            lo = total + res.lower_bound
            stats.seconds = time.monotonic() - begin
            return DistanceResult(None, None, stats, status="budget", lower_bound=lo)
        total += res.distance
        pieces.append((res.path, vmap))
    path = _concatenate_region_paths(t1, pieces)
    stats.seconds = time.monotonic() - begin
    return DistanceResult(total, path, stats, lower_bound=total)


# ------------------------------------------------------- path diagnostics


def extra_diagonals(path: FlipPath) -> frozenset[Diagonal]:
    """Diagonals visited by the path but absent from both endpoints."""
    states = path.states()
    seen: set[Diagonal] = set()
    for s in states:
        seen |= s.diagonals
    return frozenset(seen - states[0].diagonals - states[-1].diagonals)


def check_flip_count_identity(path: FlipPath) -> bool:
    """Check |path| = n-3+e against the extra-diagonal count e.

    The identity presumes that the endpoints share no diagonal and that
    the path inserts no diagonal twice (in particular never re-inserts a
    start diagonal); violations raise instead of returning a misleading
    answer.
    """
    states = path.states()
    start, end = states[0], states[-1]
    if start.diagonals & end.diagonals:
        raise ValueError("endpoints share a diagonal; the identity needs disjoint endpoints")
    insertions = Counter(ins for _, ins in path.steps)
    for d, count in sorted(insertions.items()):
        if count > 1:
            raise ValueError(f"diagonal {d} is inserted {count} times; the identity does not apply")
        if d in start.diagonals:
            raise ValueError(f"start diagonal {d} is re-inserted; the identity does not apply")
    e = len(extra_diagonals(path))
    return len(path) == (path.n - 3) + e


def check_triangle_cooccurrence(path: FlipPath):
    """Find three path diagonals forming a triangle that never co-occur.

    Returns None when every such triple appears together in some state
    (which is guaranteed on shortest paths), otherwise one offending
    triple of diagonals.
    """
    states = path.states()
    union: set[Diagonal] = set()
    for s in states:
        union |= s.diagonals
    adj: dict[int, set[int]] = {}
    for a, b in union:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    for a, b in sorted(union):
        for c in sorted(adj[a] & adj[b]):
            if c < b:
                continue
            triple = ((a, b), (b, c), (a, c))
            if not any(
                all(d in s.diagonals for d in triple) for s in states
            ):
                return triple
    return None


@dataclass
class DiameterReport:
    n: int
    bound: int | None
    samples: int = 0
    max_distance: int = 0
    within_bound: bool = True
    skipped: bool = False
    note: str = ""
    distances: list[int] = field(default_factory=list)


def diameter_sanity(
    n: int,
    trials: int,
    seed: int = 0,
    strategy: str = "bidirectional",
    node_budget: int | None = None,
    time_budget: float | None = None,
) -> DiameterReport:
    """Sample exact distances and compare them to the 2n-10 diameter.

    The bound only holds for n > 12; smaller polygons produce a skipped
    report rather than a misleading pass.
    """
    if n <= 12:
        return DiameterReport(
            n, None, skipped=True, note="diameter bound 2n-10 applies only for n > 12"
        )
    bound = 2 * n - 10
    rng = Random(seed)
    report = DiameterReport(n, bound)
    for _ in range(trials):
        t1 = random_triangulation(n, rng)
        t2 = random_triangulation(n, rng)
        res = flip_distance(
            t1, t2, strategy=strategy,
            node_budget=node_budget, time_budget=time_budget,
        )
        if not res.exact:
            raise BudgetExceeded(
                f"sample exceeded budget after {report.samples} exact distances",
                res.lower_bound,
            )
        report.samples += 1
        report.distances.append(res.distance)
        report.max_distance = max(report.max_distance, res.distance)
        if res.distance > bound:
            report.within_bound = False
    return report
