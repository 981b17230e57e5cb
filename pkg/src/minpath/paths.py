"""Paths, path systems, path cost functions, and the detour-distance cache.

A path function assigns a real value (``float('inf')`` allowed) to every
path of a path system. It is described by a base value for the trivial path
plus an extension rule applied once per appended road; the value of a whole
path is the fold of the rule along its road list. All four built-in
functions below are naturally recurrent, which keeps one extension O(1)
after detour caching.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .graphs import Graph, Road, remove_road

__all__ = [
    "INF",
    "Path",
    "PathSystem",
    "PathFunction",
    "DetourTable",
    "membership",
    "path_value",
    "format_path",
    "implied_properties",
    "classic_distance",
    "anti_risk",
    "blocked_cost",
    "expected_cost",
    "NDSP",
    "INSP",
    "SOP",
    "SOPSP",
    "OP",
    "OPSP",
    "WOP",
    "WOPSP",
    "WISP",
    "NO_NEGATIVE_CIRCLES",
    "NO_NONPOSITIVE_CIRCLES",
]

INF = float("inf")

# Structural property flags a path function may declare. Algorithms gate on
# these claims; the verify module checks them empirically.
NDSP = "NDSP"
INSP = "INSP"
SOP = "SOP"
SOPSP = "SOPSP"
OP = "OP"
OPSP = "OPSP"
WOP = "WOP"
WOPSP = "WOPSP"
WISP = "WISP"
NO_NEGATIVE_CIRCLES = "no-negative-circles"
NO_NONPOSITIVE_CIRCLES = "no-non-positive-circles"

SIMPLE = "simple"
ALL = "all"


class Path:
    """Ordered road sequence out of a fixed source vertex.

    The empty road list is the trivial path that starts and ends at the
    source. Consecutive roads must chain: road i ends where road i+1 begins.
    Instances are immutable; ``extended`` returns a new path.
    """

    __slots__ = ("graph", "source", "roads", "vertices", "_vertex_set")

    def __init__(self, graph: Graph, source: int, roads: tuple[int, ...] | list[int] = ()):
        if not 0 <= source < graph.n:
            raise ValueError(f"source {source} out of range")
        roads = tuple(roads)
        vertices = [source]
        at = source
        for key in roads:
            road = graph.road(key)
            if road.tail != at:
                raise ValueError(f"road chain broken: road {key} starts at {road.tail}, expected {at}")
            at = road.head
            vertices.append(at)
        self.graph = graph
        self.source = source
        self.roads = roads
        self.vertices = tuple(vertices)
        self._vertex_set: frozenset[int] | None = None

    @classmethod
    def _make(cls, graph: Graph, source: int, roads: tuple[int, ...], vertices: tuple[int, ...]) -> "Path":
        path = object.__new__(cls)
        path.graph = graph
        path.source = source
        path.roads = roads
        path.vertices = vertices
        path._vertex_set = None
        return path

    @property
    def terminal(self) -> int:
        return self.vertices[-1]

    @property
    def vertex_set(self) -> frozenset[int]:
        if self._vertex_set is None:
            self._vertex_set = frozenset(self.vertices)
        return self._vertex_set

    @property
    def is_simple(self) -> bool:
        """True when no vertex repeats (a path "without circles")."""
        return len(self.vertex_set) == len(self.vertices)

    def extended(self, key: int) -> "Path":
        road = self.graph.road(key)
        if road.tail != self.terminal:
            raise ValueError(f"road chain broken: road {key} starts at {road.tail}, expected {self.terminal}")
        return Path._make(self.graph, self.source, self.roads + (key,), self.vertices + (road.head,))

    def prefix(self, length: int) -> "Path":
        """The prefix with the first ``length`` roads."""
        if not 0 <= length <= len(self.roads):
            raise ValueError(f"prefix length {length} out of range")
        return Path._make(self.graph, self.source, self.roads[:length], self.vertices[: length + 1])

    def father(self) -> "Path | None":
        """The path minus its last road; None for the trivial path."""
        if not self.roads:
            return None
        return self.prefix(len(self.roads) - 1)

    def is_proper_prefix_of(self, other: "Path") -> bool:
        return (
            self.source == other.source
            and len(self.roads) < len(other.roads)
            and other.roads[: len(self.roads)] == self.roads
        )

    def __len__(self) -> int:
        return len(self.roads)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Path):
            return NotImplemented
        return self.source == other.source and self.roads == other.roads

    def __hash__(self) -> int:
        return hash((self.source, self.roads))

    def __repr__(self) -> str:
        return f"Path({format_path(self)!r})"


def format_path(path: Path) -> str:
    """Serialize as ``s=v0 -> v1[k3] -> v2[k7]`` with road keys in brackets."""
    parts = [f"s={path.source}"]
    for key, vertex in zip(path.roads, path.vertices[1:]):
        parts.append(f"{vertex}[k{key}]")
    return " -> ".join(parts)


@dataclass(frozen=True)
class PathSystem:
    """A designated set of paths sharing one source.

    ``simple`` admits only paths without repeated vertices, ``all`` admits
    every chained road sequence. The trivial path is always a member.
    """

    kind: str
    source: int

    def __post_init__(self):
        if self.kind not in (SIMPLE, ALL):
            raise ValueError(f"unknown path system kind {self.kind!r}")

    @classmethod
    def simple(cls, source: int) -> "PathSystem":
        return cls(SIMPLE, source)

    @classmethod
    def all_paths(cls, source: int) -> "PathSystem":
        return cls(ALL, source)

    def contains(self, path: Path) -> bool:
        if path.source != self.source:
            return False
        return self.kind == ALL or path.is_simple

    def admits_extension(self, parent: Path, head: int) -> bool:
        """Membership of ``parent`` extended by one road into ``head``.

        Assumes ``parent`` is itself a member; avoids building the child.
        """
        return self.kind != SIMPLE or head not in parent.vertex_set


def membership(system: PathSystem, path: Path) -> bool:
    """Whether ``path`` belongs to ``system``."""
    return system.contains(path)


@dataclass(frozen=True)
class PathFunction:
    """Path cost defined by a base value plus a per-road extension rule.

    ``extend(parent_value, parent_path, road)`` returns the value of the
    parent path extended by one road. The rule may consult the whole parent
    path, not just its value (nothing forbids history-dependent costs).
    ``declared_properties`` are trusted structural claims; see
    `implied_properties` for how solvers interpret them.
    """

    name: str
    base: float
    extend: Callable[[float, Path, Road], float]
    declared_properties: frozenset[str] = field(default_factory=frozenset)
    eval_cost_note: str = ""


def path_value(func: PathFunction, path: Path) -> float:
    """Fold ``func.extend`` along the path's roads starting from the base."""
    value = func.base
    for i, key in enumerate(path.roads):
        value = func.extend(value, path.prefix(i), path.graph.road(key))
    return value


def implied_properties(declared: frozenset[str] | set[str], system: PathSystem | None = None) -> frozenset[str]:
    """Closure of declared property flags under the standard derivations.

    Unrestricted order-preservation implies its minimum-path restriction;
    order-preservation implies both its weak and semi variants; absence of
    non-positive circles implies absence of negative ones and, together with
    SOPSP, weak inheritance. On a simple-path system the circle properties
    hold vacuously (no member extends another by a circle), so they are
    added before closing.
    """
    props = set(declared)
    if system is not None and system.kind == SIMPLE:
        props.add(NO_NONPOSITIVE_CIRCLES)
    rules = (
        ({SOP}, SOPSP),
        ({OP}, SOP),
        ({OP}, OPSP),
        ({OP}, WOP),
        ({OPSP}, SOPSP),
        ({OPSP}, WOPSP),
        ({WOP}, WOPSP),
        ({NO_NONPOSITIVE_CIRCLES}, NO_NEGATIVE_CIRCLES),
        ({NO_NONPOSITIVE_CIRCLES, SOPSP}, WISP),
        ({NO_NEGATIVE_CIRCLES, SOPSP, INSP}, WISP),
    )
    changed = True
    while changed:
        changed = False
        for premises, conclusion in rules:
            if conclusion not in props and premises <= props:
                props.add(conclusion)
                changed = True
    return frozenset(props)


def _classic_distances(graph: Graph, source: int) -> tuple[float, ...]:
    """Nonnegative-weight single-source distances by label setting.

    O(n^2) scan selection, ties broken by smallest vertex id. Unreachable
    vertices get ``inf``. Raises on any negative weight.
    """
    if not 0 <= source < graph.n:
        raise ValueError(f"source {source} out of range")
    for r in graph.roads:
        if r.weight < 0:
            raise ValueError("negative weight present")
    n = graph.n
    dist = [INF] * n
    dist[source] = 0.0
    done = [False] * n
    for _ in range(n):
        best = -1
        for v in range(n):
            if not done[v] and dist[v] < INF and (best < 0 or dist[v] < dist[best]):
                best = v
        if best < 0:
            break
        done[best] = True
        d = dist[best]
        for road in graph.out_roads(best):
            if not done[road.head] and d + road.weight < dist[road.head]:
                dist[road.head] = d + road.weight
    return tuple(dist)


class DetourTable:
    """Cache of classic shortest distances after deleting one road.

    An entry ``(deleted, origin, target)`` is the distance from origin to
    target in the graph without that road, ``inf`` when the deletion
    disconnects them. Rows fill on demand and are never invalidated (the
    graph is immutable). Concurrent fills race benignly: every writer
    computes identical values.
    """

    def __init__(self, graph: Graph):
        self.graph = graph
        self._rows: dict[tuple[int, int], tuple[float, ...]] = {}

    def distance(self, deleted: int, origin: int, target: int) -> float:
        row = self._rows.get((deleted, origin))
        if row is None:
            row = _classic_distances(remove_road(self.graph, deleted), origin)
            self._rows[(deleted, origin)] = row
        return row[target]


def _require_nonnegative(graph: Graph, name: str) -> None:
    for r in graph.roads:
        if r.weight < 0:
            raise ValueError(f"{name} requires nonnegative weights")


def _require_probability(p: float) -> None:
    if not 0.0 < p < 1.0:
        raise ValueError("p out of range (0, 1)")


def classic_distance(graph: Graph) -> PathFunction:
    """Sum of road weights.

    With nonnegative weights the sum is nondecreasing and order-preserving;
    with general conservative weights it is order-preserving and free of
    negative circles. The constructor declares the set that matches the
    weights it sees (conservativeness itself is the caller's claim).
    """
    nonneg = all(r.weight >= 0 for r in graph.roads)
    if nonneg:
        props = frozenset({NDSP, SOP, OP, NO_NEGATIVE_CIRCLES})
    else:
        props = frozenset({OP, NO_NEGATIVE_CIRCLES})

    def extend(value: float, parent: Path, road: Road) -> float:
        return value + road.weight

    return PathFunction("classic", 0.0, extend, props, "one addition per extension")


def anti_risk(graph: Graph, table: DetourTable | None = None) -> PathFunction:
    """Worst-case travel cost when at most one road may be blocked.

    Extending a path ending at u by road u->v costs the larger of the
    blocked-road fallback (source-to-v distance with that road deleted) and
    the normal cost w(u,v) plus the parent's risk. Folding this recurrence
    reproduces, for every simple path, the direct maximum over the plain
    length, the last-road fallback, and every suffix-length-plus-fallback
    combination.
    """
    _require_nonnegative(graph, "anti-risk")
    table = table if table is not None else DetourTable(graph)

    def extend(value: float, parent: Path, road: Road) -> float:
        blocked = table.distance(road.key, parent.source, road.head)
        return max(blocked, road.weight + value)

    props = frozenset({NDSP, SOP, WISP})
    return PathFunction("antirisk", 0.0, extend, props, "one cached detour query plus O(1) arithmetic")


def blocked_cost(graph: Graph, p: float, table: DetourTable | None = None) -> PathFunction:
    """Travel cost with a blockage surcharge on every road taken.

    Each road u->v adds its weight plus p times the detour distance from u
    to v with that road deleted; an impossible detour makes the route cost
    infinite. Intended for simple-path systems.
    """
    _require_probability(p)
    _require_nonnegative(graph, "blocked-cost")
    table = table if table is not None else DetourTable(graph)

    def extend(value: float, parent: Path, road: Road) -> float:
        detour = table.distance(road.key, road.tail, road.head)
        return p * detour + road.weight + value

    props = frozenset({NDSP, SOP, WISP})
    return PathFunction("blocked-cost", 0.0, extend, props, "one cached detour query plus O(1) arithmetic")


def expected_cost(graph: Graph, p: float, table: DetourTable | None = None) -> PathFunction:
    """Expected travel cost when each taken road is blocked with probability p.

    Each road u->v contributes p times the u-to-v detour distance (road
    deleted) plus (1-p) times the normal cost of the road and the parent
    path. Intended for simple-path systems.
    """
    _require_probability(p)
    _require_nonnegative(graph, "expected-cost")
    table = table if table is not None else DetourTable(graph)

    def extend(value: float, parent: Path, road: Road) -> float:
        detour = table.distance(road.key, road.tail, road.head)
        return p * detour + (1.0 - p) * (road.weight + value)

    props = frozenset({OP})
    return PathFunction("expected-cost", 0.0, extend, props, "one cached detour query plus O(1) arithmetic")
