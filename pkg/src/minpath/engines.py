"""Solvers: generalized label-setting, generalized relaxation, spanning tree.

All three procedures are deterministic over immutable inputs. Tie-breaks
are fixed (smallest new vertex id, then smallest tail id, then smallest
road key) so identical inputs give identical trees, orders, and stats.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph
from .paths import (
    INF,
    NDSP,
    NO_NEGATIVE_CIRCLES,
    OP,
    SOPSP,
    WISP,
    Path,
    PathFunction,
    PathSystem,
    _classic_distances,
    format_path,
    implied_properties,
)

__all__ = [
    "RunStats",
    "ShortestPathTree",
    "PropertyRefusalError",
    "NegativeCircleError",
    "UnreachableVertexError",
    "sta",
    "eda",
    "embfa",
    "dijkstra_classic",
    "format_tree",
]


class PropertyRefusalError(ValueError):
    """The path function does not declare the properties a solver needs."""


class NegativeCircleError(RuntimeError):
    """Relaxation kept improving past the simple-path horizon."""


class UnreachableVertexError(ValueError):
    """Spanning-tree construction found a vertex the source cannot reach."""


@dataclass
class RunStats:
    """Exact, deterministic operation counts for one solver run."""

    extend_calls: int = 0
    relaxations: int = 0
    rounds: int = 0

    def format(self) -> str:
        return f"# extend_calls={self.extend_calls} relaxations={self.relaxations} rounds={self.rounds}"


@dataclass
class ShortestPathTree:
    """Arborescence rooted at the source, with per-vertex value and path.

    ``parent`` maps every covered vertex except the source to its tree
    predecessor ``(vertex, road key)``. ``value`` is empty for trees built
    by `sta`, which is structural only. ``order`` is the discovery sequence
    for `sta`/`eda` and None for `embfa`.
    """

    graph: Graph
    source: int
    parent: dict[int, tuple[int, int]]
    value: dict[int, float]
    order: list[int] | None
    covered: set[int]

    def path_to(self, vertex: int) -> Path:
        """Reconstruct the tree path to a covered vertex from parent links."""
        if vertex not in self.covered:
            raise ValueError(f"vertex {vertex} is not covered by the tree")
        keys: list[int] = []
        at = vertex
        for _ in range(self.graph.n):
            if at == self.source:
                keys.reverse()
                return Path(self.graph, self.source, keys)
            u, key = self.parent[at]
            keys.append(key)
            at = u
        raise RuntimeError("parent links contain a cycle")


def _check_source(graph: Graph, source: int, system: PathSystem | None = None) -> None:
    if not 0 <= source < graph.n:
        raise ValueError(f"source {source} out of range")
    if system is not None and system.source != source:
        raise ValueError(f"path system source {system.source} does not match solve source {source}")


def _require_properties(func: PathFunction, system: PathSystem, needed: set[str], solver: str, force: bool) -> None:
    missing = needed - implied_properties(func.declared_properties, system)
    if missing and not force:
        raise PropertyRefusalError(
            f"path function {func.name!r} does not declare or imply "
            f"{', '.join(sorted(missing))}, required by {solver} "
            "(pass force=True to run anyway, results are then undefined)"
        )


def sta(graph: Graph, source: int) -> ShortestPathTree:
    """Spanning arborescence rooted at ``source`` covering every vertex.

    The source must reach every vertex; otherwise one unreachable vertex is
    named in the error. Values are not populated.
    """
    _check_source(graph, source)
    covered = {source}
    order = [source]
    parent: dict[int, tuple[int, int]] = {}
    roads = sorted(graph.roads, key=lambda r: r.key)
    while len(covered) < graph.n:
        best: tuple[int, int, int] | None = None
        for road in roads:
            if road.tail in covered and road.head not in covered:
                candidate = (road.head, road.tail, road.key)
                if best is None or candidate < best:
                    best = candidate
        if best is None:
            missing = min(v for v in range(graph.n) if v not in covered)
            raise UnreachableVertexError(f"vertex {missing} unreachable from source")
        v, u, key = best
        parent[v] = (u, key)
        covered.add(v)
        order.append(v)
    return ShortestPathTree(graph, source, parent, {}, order, covered)


def eda(
    graph: Graph,
    source: int,
    system: PathSystem,
    func: PathFunction,
    *,
    force: bool = False,
) -> tuple[ShortestPathTree, RunStats]:
    """Generalized label setting: grow the tree by the cheapest frontier pair.

    Each round selects, over pairs (u covered, v uncovered) whose tree-path
    extension belongs to the system, a pair minimizing the extended value,
    and fixes v with u as parent. Candidate values are evaluated once, when
    their tail joins the tree: a tree path never changes after that, so the
    cached per-vertex best label equals the full frontier minimum.

    Requires a function declaring (or implying) SOPSP, WISP and NDSP; the
    flags are trusted, not re-proven. Vertices unreachable within the system
    are absent from the tree.
    """
    _check_source(graph, source, system)
    _require_properties(func, system, {SOPSP, WISP, NDSP}, "eda", force)
    stats = RunStats()
    trivial = Path(graph, source)
    covered = {source}
    order = [source]
    parent: dict[int, tuple[int, int]] = {}
    value: dict[int, float] = {source: func.base}
    paths: dict[int, Path] = {source: trivial}
    labels: dict[int, tuple[float, int, int]] = {}

    def scan(u: int) -> None:
        path_u = paths[u]
        value_u = value[u]
        for road in graph.out_roads(u):
            v = road.head
            if v in covered:
                continue
            if not system.admits_extension(path_u, v):
                continue
            candidate = func.extend(value_u, path_u, road)
            stats.extend_calls += 1
            label = (candidate, u, road.key)
            if v not in labels or label < labels[v]:
                labels[v] = label
                stats.relaxations += 1

    scan(source)
    while labels:
        v = min(labels, key=lambda x: (labels[x][0], x))
        candidate, u, key = labels.pop(v)
        paths[v] = paths[u].extended(key)
        value[v] = candidate
        parent[v] = (u, key)
        covered.add(v)
        order.append(v)
        stats.rounds += 1
        scan(v)
    tree = ShortestPathTree(graph, source, parent, value, order, covered)
    return tree, stats


def embfa(
    graph: Graph,
    source: int,
    system: PathSystem,
    func: PathFunction,
    *,
    force: bool = False,
) -> tuple[ShortestPathTree, RunStats]:
    """Generalized relaxation over up to n rounds of full road scans.

    Roads are scanned in ascending key order. A road (u, v) relaxes when u
    holds a tree path, the extension stays inside the system, and the
    extended value improves on v's current value; v then adopts the whole
    extended path. A reachable vertex whose every route costs ``inf`` adopts
    the first infinite candidate so the covered set still matches the
    system's reachable set. Uncovered tails (the initial "no path yet"
    state) are never extended.

    Simple-path minima need at most n-1 rounds, so any relaxation that still
    succeeds in round n certifies a negative circle and raises. A round with
    no successful relaxation ends the loop early; the executed count is in
    ``stats.rounds``.

    The returned tree is assembled from the recorded relaxation roads: a
    link is recorded only when it keeps the link map acyclic, and the final
    values are the folds along the finished parent chains. On every input
    where the relaxation converges tight (all the solvable cases) both
    steps are no-ops; they only matter for functions whose minima are not
    weakly inherited, where they keep the output a sound arborescence.

    Requires a function declaring (or implying) order preservation and
    absence of negative circles.
    """
    _check_source(graph, source, system)
    _require_properties(func, system, {OP, NO_NEGATIVE_CIRCLES}, "embfa", force)
    stats = RunStats()
    n = graph.n
    paths: dict[int, Path] = {source: Path(graph, source)}
    value: dict[int, float] = {source: func.base}
    parent: dict[int, tuple[int, int]] = {}

    def link_would_cycle(tail: int, head: int) -> bool:
        at = tail
        while at != source:
            if at == head:
                return True
            at = parent[at][0]
        return False

    roads = sorted(graph.roads, key=lambda r: r.key)
    for rnd in range(1, n + 1):
        stats.rounds = rnd
        changed = False
        for road in roads:
            parent_path = paths.get(road.tail)
            if parent_path is None:
                continue
            v = road.head
            if not system.admits_extension(parent_path, v):
                continue
            candidate = func.extend(value[road.tail], parent_path, road)
            stats.extend_calls += 1
            current = value.get(v, INF)
            if candidate < current or (v not in paths and candidate == INF):
                if rnd == n:
                    raise NegativeCircleError(
                        f"relaxation still improves vertex {v} via road {road.key} in round {n}; "
                        "the path function has a negative circle on this input"
                    )
                paths[v] = parent_path.extended(road.key)
                value[v] = candidate
                if not link_would_cycle(road.tail, v):
                    parent[v] = (road.tail, road.key)
                stats.relaxations += 1
                changed = True
        if not changed:
            break

    # Fold values along the final chains. Each vertex costs one extension
    # on top of its parent's memoized value, so this stays within budget.
    covered = set(paths)
    chain_paths: dict[int, Path] = {source: paths[source]}
    chain_values: dict[int, float] = {source: func.base}

    def resolve(vertex: int) -> None:
        pending = []
        at = vertex
        while at not in chain_paths:
            pending.append(at)
            at = parent[at][0]
        for v in reversed(pending):
            u, key = parent[v]
            road = graph.road(key)
            chain_values[v] = func.extend(chain_values[u], chain_paths[u], road)
            stats.extend_calls += 1
            chain_paths[v] = chain_paths[u].extended(key)

    for v in covered:
        resolve(v)
    tree = ShortestPathTree(graph, source, parent, chain_values, None, covered)
    return tree, stats


def dijkstra_classic(graph: Graph, source: int) -> tuple[float, ...]:
    """Classic nonnegative-weight single-source distances.

    The detour-distance workhorse and the reduction reference: on a
    nonnegative network, `eda` with the classic distance function computes
    exactly these values. ``inf`` marks unreachable vertices. Raises on any
    negative weight.
    """
    return _classic_distances(graph, source)


def _format_value(value: float | None) -> str:
    return "-" if value is None else repr(value)


def format_tree(tree: ShortestPathTree, stats: RunStats | None = None) -> str:
    """Text form: one line per covered vertex in id order, plus a stats line.

    ``<v> value=<f-value or inf> path=<serialized path>``; trees without
    values (from `sta`) print ``value=-``.
    """
    lines = []
    for v in sorted(tree.covered):
        val = tree.value.get(v) if tree.value else None
        lines.append(f"{v} value={_format_value(val)} path={format_path(tree.path_to(v))}")
    if stats is not None:
        lines.append(stats.format())
    return "\n".join(lines) + "\n"
