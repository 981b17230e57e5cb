"""Brute-force minima and empirical checkers for path-function properties.

The oracle enumerates every simple path from the source, so it is exact
whenever the function has no negative circles (then no minimum needs a
circle) and it is meant for small instances only. Property checkers test
the quantified definitions exhaustively within an enumeration bound: a
``no-violation-found`` verdict is bounded evidence, not proof, while a
``violated`` verdict always carries a concrete witness.

Value comparisons use an absolute tolerance (default 1e-9). Conclusions of
strict clauses are flagged only when clearly beyond tolerance; within
tolerance the strict variants are indistinguishable from their weak forms.
The one exception is the strict circle check, where an exact tie is a
genuine non-positive circle and is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .graphs import Graph, Road
from .paths import (
    INF,
    INSP,
    NDSP,
    NO_NEGATIVE_CIRCLES,
    NO_NONPOSITIVE_CIRCLES,
    OP,
    OPSP,
    SOP,
    SOPSP,
    WOP,
    WOPSP,
    Path,
    PathFunction,
    PathSystem,
    format_path,
    implied_properties,
)

__all__ = [
    "NO_VIOLATION",
    "VIOLATED",
    "DEF1_PROPERTIES",
    "OracleResult",
    "PropertyReport",
    "enumerate_paths",
    "oracle_min",
    "check_property",
    "check_no_negative_circles",
    "check_wisp",
    "compare_tree_to_oracle",
    "parity_length",
]

NO_VIOLATION = "no-violation-found"
VIOLATED = "violated"

DEF1_PROPERTIES = (NDSP, INSP, SOP, SOPSP, OP, OPSP, WOP, WOPSP)
_MINIMUM_HYPOTHESIS = {NDSP, INSP, SOPSP, OPSP, WOPSP}


def _close(a: float, b: float, tol: float) -> bool:
    return a == b or abs(a - b) <= tol


@dataclass
class OracleResult:
    """Per-vertex true minima over simple paths, with argmin witnesses."""

    source: int
    minimum: dict[int, float]
    witness: dict[int, Path]
    enumerated_count: int


@dataclass
class PropertyReport:
    """Outcome of one empirical check, with the evidence for a violation."""

    property: str
    verdict: str
    scope: str
    witness: str | None = None
    details: dict | None = None

    @property
    def violated(self) -> bool:
        return self.verdict == VIOLATED

    def format(self) -> str:
        return f"property={self.property} verdict={self.verdict} scope={self.scope} witness={self.witness or '-'}"


def enumerate_paths(graph: Graph, source: int, system: PathSystem, max_roads: int) -> Iterator[Path]:
    """Depth-first stream of system members with at most ``max_roads`` roads.

    Children are visited in road-key order and the trivial path comes
    first, so the stream order is deterministic and complete for the bound.
    """
    if max_roads < 0:
        raise ValueError("max_roads must be nonnegative")
    if system.source != source:
        raise ValueError(f"path system source {system.source} does not match {source}")

    def rec(path: Path) -> Iterator[Path]:
        yield path
        if len(path.roads) >= max_roads:
            return
        for road in graph.out_roads(path.terminal):
            if system.admits_extension(path, road.head):
                yield from rec(path.extended(road.key))

    yield from rec(Path(graph, source))


def _walk_values(
    graph: Graph,
    source: int,
    system: PathSystem,
    func: PathFunction,
    max_roads: int,
) -> Iterator[tuple[Path, float]]:
    """Like `enumerate_paths` but carrying folded values incrementally."""

    def rec(path: Path, value: float) -> Iterator[tuple[Path, float]]:
        yield path, value
        if len(path.roads) >= max_roads:
            return
        for road in graph.out_roads(path.terminal):
            if system.admits_extension(path, road.head):
                yield from rec(path.extended(road.key), func.extend(value, path, road))

    yield from rec(Path(graph, source), func.base)


def oracle_min(graph: Graph, source: int, system: PathSystem, func: PathFunction) -> OracleResult:
    """Exact per-vertex minima of ``func`` by exhausting simple paths.

    Valid as the true infimum because a function without negative circles
    never needs a circle to reach a minimum; the gate accepts declared (or
    implied) circle-freedom, which on a simple-path system holds vacuously.
    Ties keep the first path in enumeration order. Exponential: intended
    for n up to about 10.
    """
    if NO_NEGATIVE_CIRCLES not in implied_properties(func.declared_properties, system):
        raise ValueError(
            f"oracle requires a function without negative circles; {func.name!r} does not declare one"
        )
    minimum: dict[int, float] = {}
    witness: dict[int, Path] = {}
    count = 0
    simple = PathSystem.simple(source)
    for path, value in _walk_values(graph, source, simple, func, graph.n - 1):
        count += 1
        t = path.terminal
        if t not in minimum or value < minimum[t]:
            minimum[t] = value
            witness[t] = path
    return OracleResult(source, minimum, witness, count)


def check_property(
    graph: Graph,
    source: int,
    system: PathSystem,
    func: PathFunction,
    prop: str,
    max_roads: int | None = None,
    tol: float = 1e-9,
) -> PropertyReport:
    """Exhaustively test one order/monotonicity property within a bound.

    Monotone clauses (NDSP, INSP) scan every minimum path and all of its
    sons; order-preservation clauses scan every ordered pair of same-terminal
    paths together with every common extension road whose extensions stay in
    the system. The "-SP" variants restrict the hypothesis side to minimum
    paths (minima from `oracle_min`). The first violation in enumeration
    order is reported.
    """
    if prop not in DEF1_PROPERTIES:
        raise ValueError(f"unknown property name {prop!r}")
    if max_roads is None:
        max_roads = graph.n - 1
    scope = f"max_roads:{max_roads}"
    minima = oracle_min(graph, source, system, func).minimum if prop in _MINIMUM_HYPOTHESIS else None

    groups: dict[int, list[tuple[Path, float]]] = {}
    for path, value in _walk_values(graph, source, system, func, max_roads):
        groups.setdefault(path.terminal, []).append((path, value))

    if prop in (NDSP, INSP):
        for t, group in sorted(groups.items()):
            m = minima[t]
            for path, value in group:
                if not _close(value, m, tol):
                    continue
                for road in graph.out_roads(t):
                    if not system.admits_extension(path, road.head):
                        continue
                    son_value = func.extend(value, path, road)
                    if son_value < value - tol:
                        witness = (
                            f"P={format_path(path)} f={value!r}; "
                            f"son via k{road.key} f={son_value!r}"
                        )
                        details = {"path": path, "value": value, "road": road, "son_value": son_value}
                        return PropertyReport(prop, VIOLATED, scope, witness, details)
        return PropertyReport(prop, NO_VIOLATION, scope)

    strict_hypothesis = prop in (WOP, WOPSP, OP, OPSP)
    equality_clause = prop in (OP, OPSP)
    minimum_side = prop in (SOPSP, WOPSP, OPSP)

    for t, group in sorted(groups.items()):
        for road in graph.out_roads(t):
            extended = [
                (path, value, func.extend(value, path, road))
                for path, value in group
                if system.admits_extension(path, road.head)
            ]
            for path_a, value_a, ext_a in extended:
                if minimum_side and not _close(value_a, minima[t], tol):
                    continue
                for path_b, value_b, ext_b in extended:
                    if path_b is path_a:
                        continue
                    ordered = value_a < value_b if strict_hypothesis else value_a <= value_b
                    if ordered and ext_a > ext_b + tol:
                        witness = (
                            f"P={format_path(path_a)} f={value_a!r}; "
                            f"P'={format_path(path_b)} f={value_b!r}; "
                            f"road k{road.key}: f(P+r)={ext_a!r} > f(P'+r)={ext_b!r}"
                        )
                        details = {
                            "path": path_a,
                            "other": path_b,
                            "road": road,
                            "values": (value_a, value_b),
                            "extended": (ext_a, ext_b),
                        }
                        return PropertyReport(prop, VIOLATED, scope, witness, details)
                    if equality_clause and value_a == value_b and not _close(ext_a, ext_b, tol):
                        witness = (
                            f"P={format_path(path_a)} = P'={format_path(path_b)} = {value_a!r}; "
                            f"road k{road.key}: f(P+r)={ext_a!r} != f(P'+r)={ext_b!r}"
                        )
                        details = {
                            "path": path_a,
                            "other": path_b,
                            "road": road,
                            "values": (value_a, value_b),
                            "extended": (ext_a, ext_b),
                        }
                        return PropertyReport(prop, VIOLATED, scope, witness, details)
    return PropertyReport(prop, NO_VIOLATION, scope)


def check_no_negative_circles(
    graph: Graph,
    source: int,
    func: PathFunction,
    max_roads: int | None = None,
    strict: bool = False,
    tol: float = 1e-9,
) -> PropertyReport:
    """Scan all paths within the bound for a circle that lowers the value.

    For every enumerated path and every proper prefix ending at the same
    vertex, the remainder is a circle; the value difference must be >= 0
    (``strict=True`` demands > 0 and treats a tie as a violation). The bound
    must be at least n so that a simple circle appended to a short prefix
    fits inside the enumeration.
    """
    if max_roads is None:
        max_roads = graph.n + 2
    if max_roads < graph.n:
        raise ValueError("max_roads must be at least n to fit a circle")
    name = NO_NONPOSITIVE_CIRCLES if strict else NO_NEGATIVE_CIRCLES
    scope = f"max_roads:{max_roads}"

    def rec(path: Path, values: list[float]) -> PropertyReport | None:
        t = path.terminal
        full = values[-1]
        for i in range(len(path.vertices) - 1):
            if path.vertices[i] != t:
                continue
            diff = full - values[i]
            bad = diff <= tol if strict else diff < -tol
            if bad:
                prefix = path.prefix(i)
                witness = (
                    f"P={format_path(prefix)} f={values[i]!r}; "
                    f"P+C={format_path(path)} f={full!r}; diff={diff!r}"
                )
                details = {"prefix": prefix, "full": path, "values": (values[i], full)}
                return PropertyReport(name, VIOLATED, scope, witness, details)
        if len(path.roads) < max_roads:
            for road in graph.out_roads(t):
                child = path.extended(road.key)
                found = rec(child, values + [func.extend(full, path, road)])
                if found is not None:
                    return found
        return None

    found = rec(Path(graph, source), [func.base])
    return found if found is not None else PropertyReport(name, NO_VIOLATION, scope)


def check_wisp(
    graph: Graph,
    source: int,
    system: PathSystem,
    func: PathFunction,
    tol: float = 1e-9,
) -> PropertyReport:
    """Search for a prefix-minimal witness path to every reachable vertex.

    Weak inheritance asks that each reachable vertex admit some path whose
    every prefix is a minimum path. Minimum witnesses never need circles, so
    the search walks simple paths only, pruning any prefix that leaves the
    set of minimum paths. Violated exactly when some vertex has no witness.
    """
    oracle = oracle_min(graph, source, system, func)
    reachable = set(oracle.minimum)
    witnessed = {source}

    def rec(path: Path, value: float) -> None:
        for road in graph.out_roads(path.terminal):
            head = road.head
            if head in path.vertex_set:
                continue
            child_value = func.extend(value, path, road)
            if _close(child_value, oracle.minimum[head], tol):
                witnessed.add(head)
                rec(path.extended(road.key), child_value)

    rec(Path(graph, source), func.base)
    scope = f"max_roads:{graph.n - 1}"
    missing = sorted(reachable - witnessed)
    if missing:
        v = missing[0]
        witness = f"vertex={v} m_f={oracle.minimum[v]!r} has no prefix-minimal path"
        details = {"vertex": v, "missing": missing, "minimum": oracle.minimum[v]}
        return PropertyReport("WISP", VIOLATED, scope, witness, details)
    return PropertyReport("WISP", NO_VIOLATION, scope)


def compare_tree_to_oracle(tree, oracle: OracleResult, tol: float = 1e-9) -> PropertyReport:
    """Check a solver tree against oracle minima: same coverage, same values.

    Reports the worst-deviating vertex on failure.
    """
    if tree.source != oracle.source:
        raise ValueError("mismatched sources")
    scope = f"tolerance:{tol!r}"
    tree_covered = set(tree.covered)
    oracle_covered = set(oracle.minimum)
    if tree_covered != oracle_covered:
        only_tree = sorted(tree_covered - oracle_covered)
        only_oracle = sorted(oracle_covered - tree_covered)
        witness = f"covered sets differ: tree-only={only_tree} oracle-only={only_oracle}"
        return PropertyReport(
            "tree-vs-oracle", VIOLATED, scope, witness,
            {"tree_only": only_tree, "oracle_only": only_oracle},
        )
    worst_vertex = None
    worst_dev = 0.0
    for v in sorted(oracle_covered):
        a = tree.value[v]
        b = oracle.minimum[v]
        if a == b:
            continue
        dev = INF if math.isinf(a) or math.isinf(b) else abs(a - b)
        if dev > worst_dev:
            worst_dev = dev
            worst_vertex = v
    if worst_dev > tol:
        a = tree.value[worst_vertex]
        b = oracle.minimum[worst_vertex]
        witness = f"vertex={worst_vertex} tree={a!r} oracle={b!r} deviation={worst_dev!r}"
        return PropertyReport(
            "tree-vs-oracle", VIOLATED, scope, witness,
            {"vertex": worst_vertex, "tree": a, "oracle": b, "deviation": worst_dev},
        )
    return PropertyReport("tree-vs-oracle", NO_VIOLATION, scope)


def parity_length(graph: Graph) -> PathFunction:
    """Deliberately ill-behaved probe: parity of the floored path length.

    Declares nothing and violates the monotone properties on most inputs;
    used to confirm that the checkers can actually find violations. The
    extension rule re-sums the parent path, exercising history-dependent
    functions.
    """

    def extend(value: float, parent: Path, road: Road) -> float:
        total = road.weight
        for key in parent.roads:
            total += graph.road(key).weight
        return float(math.floor(total) % 2)

    return PathFunction("parity", 0.0, extend, frozenset(), "re-sums the whole path")
