"""Parse crafted instructions back into atoms and walk them on the graph.

The executor is the self-check for the crafting grammar: parsing inverts the
template table exactly, and execution re-walks the graph by scoring each
neighbor against the expected bearing of the current atom's turn class, with
a hard preference for neighbors whose best visible object matches the atom's
object reference.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .instruction_crafter import (
    MOTION_CORE,
    RELATION_SUFFIX,
    STOP_AT,
    STOP_PLAIN,
    TURN_PREFIX,
    AtomicInstruction,
    Motion,
    ObjectRef,
    Turn,
    make_atom,
)
from .nav_graph import NavGraph, PathSpec, geodesic_distance, neighbors
from .object_saliency import Relation, SaliencyConfig, best_object, filter_candidates, observe
from .scene_metadata import SceneModel
from .view_geometry import heading_to, relative_bearing

# Bearing the executor steers toward for each turn class.
CLASS_CENTER = {
    Turn.NONE: 0.0,
    Turn.RIGHT: math.pi / 2,
    Turn.LEFT: -math.pi / 2,
    Turn.AROUND: math.pi,
}

# Score bonus (subtracted) when a neighbor's best object matches the atom's.
OBJECT_MATCH_BONUS = math.pi

DEFAULT_SUCCESS_RADIUS = 3.0


class InstructionParseError(ValueError):
    """Crafted text outside the closed clause grammar."""

    def __init__(self, message: str, clause_index: int, fragment: str) -> None:
        super().__init__(f"clause {clause_index}: {message}: {fragment!r}")
        self.clause_index = clause_index
        self.fragment = fragment


@dataclass(frozen=True)
class ExecutionResult:
    path: tuple[str, ...]
    final_heading: float
    stopped: bool
    failure_reason: str | None = None


@dataclass(frozen=True)
class NavMetrics:
    pl: float
    ne: float
    sr: float
    spl: float


# ---------------------------------------------------------------------------
# Parsing (exact inverse of the crafting templates)
# ---------------------------------------------------------------------------


def parse_crafted(text: str) -> list[AtomicInstruction]:
    """Parse crafted instruction text into its atom sequence.

    The text must be clauses joined by ". " with a terminal ".". Unmatched
    clauses raise InstructionParseError naming the clause index and the
    offending fragment.
    """
    if not text or not text.endswith("."):
        raise InstructionParseError("instruction must end with a period", 0, text)
    clauses = text[:-1].split(". ")
    return [_parse_clause(clause, i) for i, clause in enumerate(clauses)]


def _parse_clause(clause: str, index: int) -> AtomicInstruction:
    if clause == STOP_PLAIN:
        return make_atom(Turn.NONE, Motion.STOP)
    if clause.startswith(STOP_AT):
        rest = clause[len(STOP_AT):]
        for relation in (Relation.LEFT, Relation.RIGHT):
            marker = f"{relation.value} of the "
            if rest.startswith(marker):
                return _stop_with(rest[len(marker):], relation, index, clause)
        return _stop_with(rest, Relation.TOWARD, index, clause)

    turn = Turn.NONE
    rest = clause
    for candidate, prefix in TURN_PREFIX.items():
        if prefix and clause.startswith(prefix):
            turn = candidate
            rest = clause[len(prefix):]
            break
    if turn is Turn.NONE:
        # No prefix, so the motion core itself was capitalized.
        if not rest or not rest[0].isupper():
            raise InstructionParseError("unrecognized clause", index, clause)
        rest = rest[0].lower() + rest[1:]

    for motion, core in MOTION_CORE.items():
        if rest == core:
            return make_atom(turn, motion)
        if not rest.startswith(core):
            continue
        tail = rest[len(core):]
        for relation, suffix in RELATION_SUFFIX.items():
            if tail.startswith(suffix):
                category = tail[len(suffix):]
                if _valid_category(category):
                    return make_atom(turn, motion, ObjectRef(category, relation))
        raise InstructionParseError("unrecognized object phrase", index, clause)
    raise InstructionParseError("unrecognized clause", index, clause)


def _stop_with(category: str, relation: Relation, index: int, clause: str) -> AtomicInstruction:
    if not _valid_category(category):
        raise InstructionParseError("invalid stop object", index, clause)
    return make_atom(Turn.NONE, Motion.STOP, ObjectRef(category, relation))


def _valid_category(category: str) -> bool:
    return bool(category) and category == category.strip()


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------


def execute(graph: NavGraph, scene: SceneModel, start: str, heading_0: float,
            atoms: list[AtomicInstruction], cfg: SaliencyConfig) -> ExecutionResult:
    """Walk the atoms from start, one graph move per non-stop atom.

    Each move picks the neighbor minimizing the absolute bearing error
    against the atom's expected direction; when the atom carries an object
    reference, neighbors whose best visible object matches that category
    score an extra -pi. Ties go to the smaller viewpoint id.
    """
    graph.viewpoint(start)
    cur = start
    heading = heading_0
    path = [cur]
    stopped = False
    failure: str | None = None

    for atom in atoms:
        if atom.motion is Motion.STOP:
            stopped = True
            break
        nbr_ids = neighbors(graph, cur)
        if not nbr_ids:
            failure = f"stranded at {cur!r}: no neighbors to move to"
            break
        p_cur = graph.position(cur)
        candidates = None
        if atom.object_ref is not None:
            candidates = filter_candidates(observe(scene, p_cur, cfg.max_distance), cfg)
        want = heading + CLASS_CENTER[atom.turn]

        chosen = None
        chosen_score = math.inf
        chosen_heading = 0.0
        for nbr in nbr_ids:  # sorted ascending, so strict < keeps the smaller id on ties
            nbr_heading = heading_to(p_cur, graph.position(nbr))
            score = abs(relative_bearing(want, nbr_heading))
            if candidates is not None:
                seen = best_object(candidates, nbr_heading, cfg.fov)
                if seen is not None and seen.category == atom.object_ref.category:
                    score -= OBJECT_MATCH_BONUS
            if score < chosen_score:
                chosen, chosen_score, chosen_heading = nbr, score, nbr_heading
        cur = chosen
        heading = chosen_heading
        path.append(cur)

    return ExecutionResult(tuple(path), heading, stopped, failure)


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------


def evaluate(graph: NavGraph, gold: PathSpec, result: ExecutionResult,
             success_radius: float = DEFAULT_SUCCESS_RADIUS) -> NavMetrics:
    """Path length, navigation error, success, and path-weighted success."""
    if success_radius < 0.0:
        raise ValueError(f"success_radius must be non-negative, got {success_radius}")
    pl = 0.0
    for a, b in zip(result.path, result.path[1:]):
        pl += graph.edge_length(a, b)
    ne = geodesic_distance(graph, result.path[-1], gold.path[-1])
    sr = 1.0 if result.stopped and ne <= success_radius else 0.0
    denom = max(pl, gold.geodesic_length)
    spl = sr if denom == 0.0 else sr * gold.geodesic_length / denom
    return NavMetrics(pl=pl, ne=ne, sr=sr, spl=spl)


def evaluate_batch(metrics: list[NavMetrics]) -> NavMetrics:
    """Mean of each metric over a non-empty batch."""
    if not metrics:
        raise ValueError("cannot aggregate an empty batch")
    n = len(metrics)
    return NavMetrics(
        pl=sum(m.pl for m in metrics) / n,
        ne=sum(m.ne for m in metrics) / n,
        sr=sum(m.sr for m in metrics) / n,
        spl=sum(m.spl for m in metrics) / n,
    )
