"""Navigation graphs: connectivity parsing, shortest paths, path sampling.

A graph is built from the simulator connectivity format: a JSON array with
one entry per viewpoint carrying a 4x4 row-major pose (translation at flat
indices 3, 7 and 11), an ``included`` flag and an ``unobstructed`` boolean
row over all viewpoints. An edge exists when both endpoints are included and
either direction is unobstructed. Excluded viewpoints keep their identity
but lose all edges.
"""
from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass

from .jsonio import dumps as json_dumps
from .rng import SplitMix64
from .view_geometry import TWO_PI, Vec3, heading_to

HEADING_CHOICES = 12  # discrete initial headings, k * pi/6


class ConnectivityError(ValueError):
    """Malformed connectivity JSON."""


@dataclass(frozen=True)
class Viewpoint:
    id: str
    position: Vec3
    height: float
    included: bool


class NavGraph:
    """Undirected weighted graph over viewpoints."""

    def __init__(self, scan_id: str, viewpoints: list[Viewpoint],
                 edges: dict[tuple[str, str], float]) -> None:
        self.scan_id = scan_id
        self.viewpoints = tuple(viewpoints)
        self._by_id = {v.id: v for v in viewpoints}
        self.edges = dict(edges)
        adj: dict[str, list[tuple[str, float]]] = {v.id: [] for v in viewpoints}
        for (a, b), length in edges.items():
            adj[a].append((b, length))
            adj[b].append((a, length))
        self._adj = {vid: tuple(sorted(nbrs)) for vid, nbrs in adj.items()}

    def viewpoint(self, vid: str) -> Viewpoint:
        try:
            return self._by_id[vid]
        except KeyError:
            raise ValueError(f"unknown viewpoint id {vid!r}") from None

    def position(self, vid: str) -> Vec3:
        return self.viewpoint(vid).position

    def adjacency(self, vid: str) -> tuple[tuple[str, float], ...]:
        self.viewpoint(vid)
        return self._adj[vid]

    def edge_length(self, a: str, b: str) -> float:
        key = (a, b) if a <= b else (b, a)
        try:
            return self.edges[key]
        except KeyError:
            raise ValueError(f"no edge between {a!r} and {b!r}") from None

    def has_edge(self, a: str, b: str) -> bool:
        key = (a, b) if a <= b else (b, a)
        return key in self.edges


@dataclass(frozen=True)
class PathSpec:
    """A concrete path with its initial agent heading."""

    scan: str
    path: tuple[str, ...]
    heading_0: float
    geodesic_length: float

    def __post_init__(self) -> None:
        if len(self.path) < 1:
            raise ValueError("path must contain at least one viewpoint")
        for prev, cur in zip(self.path, self.path[1:]):
            if prev == cur:
                raise ValueError(f"immediate repetition of viewpoint {cur!r}")
        if not 0.0 <= self.heading_0 < TWO_PI:
            raise ValueError(f"heading_0 must be in [0, 2*pi), got {self.heading_0}")
        if self.geodesic_length < 0.0:
            raise ValueError("geodesic_length must be non-negative")

    @property
    def hops(self) -> int:
        return len(self.path) - 1


@dataclass(frozen=True)
class SampleResult:
    """Sampled paths plus how many requests could not be satisfied."""

    paths: tuple[PathSpec, ...]
    shortfall: int


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def parse_connectivity(text: str, scan_id: str = "") -> NavGraph:
    """Build a NavGraph from connectivity JSON text."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConnectivityError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, list):
        raise ConnectivityError("expected a top-level array of viewpoints")

    n = len(doc)
    viewpoints: list[Viewpoint] = []
    unobstructed: list[list[bool]] = []
    ids: set[str] = set()
    for i, entry in enumerate(doc):
        if not isinstance(entry, dict):
            raise ConnectivityError(f"node {i}: expected an object")
        for key in ("image_id", "pose", "included", "unobstructed", "height"):
            if key not in entry:
                raise ConnectivityError(f"node {i}: missing key {key!r}")
        vid = entry["image_id"]
        if not isinstance(vid, str):
            raise ConnectivityError(f"node {i}: image_id must be a string")
        if vid in ids:
            raise ConnectivityError(f"node {i}: duplicate image_id {vid!r}")
        ids.add(vid)
        pose = entry["pose"]
        if not isinstance(pose, list) or len(pose) != 16:
            raise ConnectivityError(
                f"node {i} ({vid!r}): pose must have 16 entries, found "
                f"{len(pose) if isinstance(pose, list) else type(pose).__name__}"
            )
        for k, value in enumerate(pose):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConnectivityError(f"node {i} ({vid!r}): pose[{k}] is not a number")
        row = entry["unobstructed"]
        if not isinstance(row, list) or len(row) != n:
            raise ConnectivityError(
                f"node {i} ({vid!r}): unobstructed must have {n} entries, found "
                f"{len(row) if isinstance(row, list) else type(row).__name__}"
            )
        for k, value in enumerate(row):
            if not isinstance(value, bool):
                raise ConnectivityError(f"node {i} ({vid!r}): unobstructed[{k}] is not a boolean")
        if not isinstance(entry["included"], bool):
            raise ConnectivityError(f"node {i} ({vid!r}): included must be a boolean")
        height = entry["height"]
        if isinstance(height, bool) or not isinstance(height, (int, float)):
            raise ConnectivityError(f"node {i} ({vid!r}): height is not a number")
        position = (float(pose[3]), float(pose[7]), float(pose[11]))
        viewpoints.append(Viewpoint(vid, position, float(height), bool(entry["included"])))
        unobstructed.append([bool(v) for v in row])

    edges: dict[tuple[str, str], float] = {}
    for i in range(n):
        if not viewpoints[i].included:
            continue
        for j in range(i + 1, n):
            if not viewpoints[j].included:
                continue
            if not (unobstructed[i][j] or unobstructed[j][i]):
                continue
            pa, pb = viewpoints[i].position, viewpoints[j].position
            length = math.dist(pa, pb)
            if length <= 0.0:
                raise ConnectivityError(
                    f"zero-length edge between {viewpoints[i].id!r} and {viewpoints[j].id!r}"
                )
            a, b = viewpoints[i].id, viewpoints[j].id
            key = (a, b) if a <= b else (b, a)
            edges[key] = length
    return NavGraph(scan_id, viewpoints, edges)


def neighbors(graph: NavGraph, vid: str) -> list[str]:
    """Neighbor ids of a viewpoint, sorted ascending."""
    return [nbr for nbr, _ in graph.adjacency(vid)]


# ---------------------------------------------------------------------------
# Shortest paths
# ---------------------------------------------------------------------------


def _dijkstra_all(graph: NavGraph, source: str) -> dict[str, tuple[float, tuple[str, ...]]]:
    """Cheapest (cost, path) per reachable node; cost ties break on the
    lexicographically smaller path, which the heap order provides for free."""
    best: dict[str, tuple[float, tuple[str, ...]]] = {}
    heap: list[tuple[float, tuple[str, ...]]] = [(0.0, (source,))]
    while heap:
        cost, path = heapq.heappop(heap)
        node = path[-1]
        if node in best:
            continue
        best[node] = (cost, path)
        for nbr, weight in graph.adjacency(node):
            if nbr not in best:
                heapq.heappush(heap, (cost + weight, path + (nbr,)))
    return best


def shortest_path(graph: NavGraph, a: str, b: str) -> PathSpec | None:
    """Minimum-cost path from a to b, or None when b is unreachable.

    Equal-cost alternatives resolve to the path whose first differing
    viewpoint id sorts lower. The initial heading faces the second node
    (0.0 for the trivial single-node path).
    """
    for vid in (a, b):
        if not graph.viewpoint(vid).included:
            raise ValueError(f"viewpoint {vid!r} is not included")
    if a == b:
        return PathSpec(graph.scan_id, (a,), 0.0, 0.0)
    best = _dijkstra_all(graph, a)
    if b not in best:
        return None
    cost, path = best[b]
    heading = heading_to(graph.position(path[0]), graph.position(path[1]))
    return PathSpec(graph.scan_id, path, heading, cost)


def geodesic_distance(graph: NavGraph, a: str, b: str) -> float:
    """Length of the cheapest route between two viewpoints, inf if none."""
    graph.viewpoint(a)
    graph.viewpoint(b)
    if a == b:
        return 0.0
    dist: dict[str, float] = {}
    heap = [(0.0, a)]
    while heap:
        cost, node = heapq.heappop(heap)
        if node in dist:
            continue
        dist[node] = cost
        if node == b:
            return cost
        for nbr, weight in graph.adjacency(node):
            if nbr not in dist:
                heapq.heappush(heap, (cost + weight, nbr))
    return math.inf


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def sample_paths(graph: NavGraph, n: int, seed: int, min_hops: int = 4,
                 max_hops: int = 7, min_geodesic: float = 5.0) -> SampleResult:
    """Sample distinct shortest paths, fully reproducible from the seed.

    Procedure, in stream order on one splitmix64 generator:

    1. ``ids`` is the sorted list of included viewpoint ids.
    2. Draw ``i = below(len(ids))`` then ``j = below(len(ids))``.
    3. Reject (draw again) when ``ids[i] == ids[j]``, when the ordered pair
       was already accepted, or when the shortest path fails the hop or
       geodesic constraints.
    4. On acceptance only, draw ``k = below(12)`` and use heading ``k*pi/6``.

    The loop ends once ``n`` paths are collected or every eligible ordered
    pair has been used; the shortfall is reported in the result.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if min_hops > max_hops:
        raise ValueError(f"min_hops {min_hops} exceeds max_hops {max_hops}")
    ids = sorted(v.id for v in graph.viewpoints if v.included)

    eligible: dict[tuple[str, str], tuple[tuple[str, ...], float]] = {}
    for a in ids:
        for b, (cost, path) in _dijkstra_all(graph, a).items():
            if b == a:
                continue
            if min_hops <= len(path) - 1 <= max_hops and cost >= min_geodesic:
                eligible[(a, b)] = (path, cost)

    target = min(n, len(eligible))
    rng = SplitMix64(seed)
    used: set[tuple[str, str]] = set()
    out: list[PathSpec] = []
    while len(out) < target:
        a = ids[rng.below(len(ids))]
        b = ids[rng.below(len(ids))]
        if a == b or (a, b) in used or (a, b) not in eligible:
            continue
        k = rng.below(HEADING_CHOICES)
        path, cost = eligible[(a, b)]
        out.append(PathSpec(graph.scan_id, path, k * math.pi / 6.0, cost))
        used.add((a, b))
    return SampleResult(tuple(out), n - len(out))


# ---------------------------------------------------------------------------
# Path file round trip
# ---------------------------------------------------------------------------


def paths_to_json(result: SampleResult) -> str:
    """Serialize sampled paths canonically (6-decimal numbers)."""
    doc = {
        "shortfall": result.shortfall,
        "paths": [
            {
                "scan": p.scan,
                "path": list(p.path),
                "heading": p.heading_0,
                "distance": p.geodesic_length,
            }
            for p in result.paths
        ],
    }
    return json_dumps(doc)


def paths_from_json(text: str) -> SampleResult:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid paths JSON: {exc}") from None
    if not isinstance(doc, dict) or set(doc) != {"shortfall", "paths"}:
        raise ValueError("paths JSON must carry exactly 'shortfall' and 'paths'")
    shortfall = doc["shortfall"]
    if isinstance(shortfall, bool) or not isinstance(shortfall, int) or shortfall < 0:
        raise ValueError("shortfall must be a non-negative integer")
    if not isinstance(doc["paths"], list):
        raise ValueError("'paths' must be an array")
    specs = []
    for i, entry in enumerate(doc["paths"]):
        if not isinstance(entry, dict) or set(entry) != {"scan", "path", "heading", "distance"}:
            raise ValueError(f"paths[{i}]: expected keys scan, path, heading, distance")
        path = entry["path"]
        if (not isinstance(path, list) or not path
                or any(not isinstance(v, str) for v in path)):
            raise ValueError(f"paths[{i}]: path must be a non-empty array of ids")
        for field in ("heading", "distance"):
            value = entry[field]
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"paths[{i}]: {field} must be a number")
        if not isinstance(entry["scan"], str):
            raise ValueError(f"paths[{i}]: scan must be a string")
        specs.append(PathSpec(entry["scan"], tuple(path),
                              float(entry["heading"]), float(entry["distance"])))
    return SampleResult(tuple(specs), shortfall)
