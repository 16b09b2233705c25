"""Word-level supervision and dataset file emission.

Every instruction token is assigned to a path node by linear position, and
every node contributes the head nouns of its most salient visible objects.
Output files are canonical JSON (fixed key order, 6-decimal numbers) so a
given pipeline run is byte-reproducible.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .jsonio import dumps as json_dumps
from .nav_graph import NavGraph, PathSpec
from .object_saliency import SaliencyConfig, filter_candidates, observe
from .scene_metadata import SceneModel, head_noun

# Characters stripped from tokens before use, wherever instructions are tokenized.
PUNCTUATION = ".,;:!?\"'"

_STRIP_TABLE = str.maketrans("", "", PUNCTUATION)


@dataclass(frozen=True)
class DatasetRecord:
    """One training path with its instruction texts."""

    path_id: int
    scan: str
    heading: float
    path: tuple[str, ...]
    instructions: tuple[str, ...]
    distance: float

    def __post_init__(self) -> None:
        if not self.instructions:
            raise ValueError("a dataset record needs at least one instruction")
        if not self.path:
            raise ValueError("a dataset record needs a non-empty path")


@dataclass(frozen=True)
class WordObjectSupervision:
    """Per-token node assignment and object labels for one instruction."""

    path_id: int
    tokens: tuple[str, ...]
    node_of_token: tuple[int, ...]
    objects_of_token: tuple[tuple[str, ...], ...]


def tokenize(text: str) -> list[str]:
    """Lowercase, strip punctuation, split on whitespace."""
    return text.lower().translate(_STRIP_TABLE).split()


def align_words_to_nodes(num_tokens: int, num_nodes: int) -> list[int]:
    """Token index -> node index by linear interpolation, rounding half up.

    Exact integer arithmetic: entry i is round_half_up(i*(K-1)/(L-1)) for
    L tokens over K nodes, all zeros for a single token.
    """
    if num_tokens <= 0:
        raise ValueError(f"num_tokens must be positive, got {num_tokens}")
    if num_nodes <= 0:
        raise ValueError(f"num_nodes must be positive, got {num_nodes}")
    if num_tokens == 1:
        return [0]
    span, steps = num_nodes - 1, num_tokens - 1
    return [(2 * i * span + steps) // (2 * steps) for i in range(num_tokens)]


def top_n_objects(scene: SceneModel, graph: NavGraph, node: str,
                  cfg: SaliencyConfig, n: int) -> list[str]:
    """Head nouns of the n most salient objects visible from a node.

    Salience ranks by projected area descending, then distance ascending,
    then object index; duplicate head nouns collapse to the first.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    position = graph.position(node)
    candidates = filter_candidates(observe(scene, position, cfg.max_distance), cfg)
    ranked = sorted(candidates, key=lambda o: (-o.area, o.distance, o.object_index))
    out: list[str] = []
    for cand in ranked:
        noun = head_noun(cand.category)
        if noun not in out:
            out.append(noun)
            if len(out) == n:
                break
    return out


def build_supervision(scene: SceneModel, graph: NavGraph, path: PathSpec,
                      instruction: str, cfg: SaliencyConfig, n: int,
                      path_id: int = 0) -> WordObjectSupervision:
    """Token-to-node alignment plus per-token object labels for one instruction."""
    tokens = tokenize(instruction)
    if not tokens:
        raise ValueError("instruction has no tokens after tokenization")
    node_of_token = align_words_to_nodes(len(tokens), len(path.path))
    per_node: dict[int, tuple[str, ...]] = {}
    for node_idx in node_of_token:
        if node_idx not in per_node:
            per_node[node_idx] = tuple(top_n_objects(scene, graph, path.path[node_idx], cfg, n))
    return WordObjectSupervision(
        path_id=path_id,
        tokens=tuple(tokens),
        node_of_token=tuple(node_of_token),
        objects_of_token=tuple(per_node[i] for i in node_of_token),
    )


# ---------------------------------------------------------------------------
# Dataset files
# ---------------------------------------------------------------------------


def emit_r2r_json(records: list[DatasetRecord]) -> str:
    """Serialize dataset records sorted by path_id; ids must be unique."""
    seen: set[int] = set()
    for record in records:
        if record.path_id in seen:
            raise ValueError(f"duplicate path_id {record.path_id}")
        seen.add(record.path_id)
    doc = [
        {
            "path_id": r.path_id,
            "scan": r.scan,
            "heading": r.heading,
            "path": list(r.path),
            "instructions": list(r.instructions),
            "distance": r.distance,
        }
        for r in sorted(records, key=lambda r: r.path_id)
    ]
    return json_dumps(doc)


def read_r2r_json(text: str) -> list[DatasetRecord]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid dataset JSON: {exc}") from None
    if not isinstance(doc, list):
        raise ValueError("dataset JSON must be a top-level array")
    records = []
    expected = {"path_id", "scan", "heading", "path", "instructions", "distance"}
    for i, entry in enumerate(doc):
        if not isinstance(entry, dict) or set(entry) != expected:
            raise ValueError(f"records[{i}]: expected keys {sorted(expected)}")
        if isinstance(entry["path_id"], bool) or not isinstance(entry["path_id"], int):
            raise ValueError(f"records[{i}]: path_id must be an integer")
        for field in ("heading", "distance"):
            if isinstance(entry[field], bool) or not isinstance(entry[field], (int, float)):
                raise ValueError(f"records[{i}]: {field} must be a number")
        if not isinstance(entry["scan"], str):
            raise ValueError(f"records[{i}]: scan must be a string")
        for field in ("path", "instructions"):
            seq = entry[field]
            if not isinstance(seq, list) or any(not isinstance(v, str) for v in seq):
                raise ValueError(f"records[{i}]: {field} must be an array of strings")
        records.append(
            DatasetRecord(
                path_id=entry["path_id"],
                scan=entry["scan"],
                heading=float(entry["heading"]),
                path=tuple(entry["path"]),
                instructions=tuple(entry["instructions"]),
                distance=float(entry["distance"]),
            )
        )
    return records


def emit_supervision_json(supervisions: list[WordObjectSupervision]) -> str:
    """Serialize supervision records sorted by path_id; ids must be unique."""
    seen: set[int] = set()
    for sup in supervisions:
        if sup.path_id in seen:
            raise ValueError(f"duplicate path_id {sup.path_id}")
        seen.add(sup.path_id)
    doc = [
        {
            "path_id": s.path_id,
            "tokens": list(s.tokens),
            "node_of_token": list(s.node_of_token),
            "objects_of_token": [list(objs) for objs in s.objects_of_token],
        }
        for s in sorted(supervisions, key=lambda s: s.path_id)
    ]
    return json_dumps(doc)


def read_supervision_json(text: str) -> list[WordObjectSupervision]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid supervision JSON: {exc}") from None
    if not isinstance(doc, list):
        raise ValueError("supervision JSON must be a top-level array")
    out = []
    expected = {"path_id", "tokens", "node_of_token", "objects_of_token"}
    for i, entry in enumerate(doc):
        if not isinstance(entry, dict) or set(entry) != expected:
            raise ValueError(f"records[{i}]: expected keys {sorted(expected)}")
        if isinstance(entry["path_id"], bool) or not isinstance(entry["path_id"], int):
            raise ValueError(f"records[{i}]: path_id must be an integer")
        tokens = entry["tokens"]
        nodes = entry["node_of_token"]
        objects = entry["objects_of_token"]
        if not isinstance(tokens, list) or any(not isinstance(t, str) for t in tokens):
            raise ValueError(f"records[{i}]: tokens must be an array of strings")
        if (not isinstance(nodes, list)
                or any(isinstance(v, bool) or not isinstance(v, int) for v in nodes)):
            raise ValueError(f"records[{i}]: node_of_token must be an array of integers")
        if (not isinstance(objects, list)
                or any(not isinstance(row, list) for row in objects)
                or any(not isinstance(v, str) for row in objects for v in row)):
            raise ValueError(f"records[{i}]: objects_of_token must be arrays of strings")
        if not len(tokens) == len(nodes) == len(objects):
            raise ValueError(f"records[{i}]: token, node and object lists must align")
        out.append(
            WordObjectSupervision(
                path_id=entry["path_id"],
                tokens=tuple(tokens),
                node_of_token=tuple(nodes),
                objects_of_token=tuple(tuple(row) for row in objects),
            )
        )
    return out
