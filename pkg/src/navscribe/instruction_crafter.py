"""Turn paths into natural-language navigation instructions.

Every path edge becomes one atomic clause (turn + motion + optional object
anchor) and the path ends with a stop clause. The clause grammar is a closed
template table; rendering is bijective so the executor can parse any crafted
text back into the identical atom sequence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .nav_graph import NavGraph, PathSpec
from .object_saliency import Relation, SaliencyConfig, best_object, filter_candidates, observe, side_of_travel
from .scene_metadata import SceneModel
from .view_geometry import Vec3, heading_to, relative_bearing

# Turn classification bounds (radians, signed bearing to the next node).
TURN_STRAIGHT_BOUND = math.pi / 8
TURN_AROUND_BOUND = 5 * math.pi / 8

# Vertical motion threshold (meters) for stair detection across regions.
VERTICAL_DELTA = 0.5


class Turn(Enum):
    NONE = "none"
    LEFT = "left"
    RIGHT = "right"
    AROUND = "around"


class Motion(Enum):
    WALK_STRAIGHT = "walk_straight"
    GO_UP = "go_up"
    GO_DOWN = "go_down"
    STOP = "stop"


@dataclass(frozen=True)
class ObjectRef:
    category: str
    relation: Relation


@dataclass(frozen=True)
class AtomicInstruction:
    turn: Turn
    motion: Motion
    object_ref: ObjectRef | None
    text: str


@dataclass(frozen=True)
class CraftedInstruction:
    atoms: tuple[AtomicInstruction, ...]
    text: str
    headings: tuple[float, ...]


# ---------------------------------------------------------------------------
# Template table (closed grammar; parse_crafted inverts it exactly)
# ---------------------------------------------------------------------------

TURN_PREFIX = {
    Turn.NONE: "",
    Turn.LEFT: "Turn left, ",
    Turn.RIGHT: "Turn right, ",
    Turn.AROUND: "Turn around, ",
}

MOTION_CORE = {
    Motion.WALK_STRAIGHT: "walk straight",
    Motion.GO_UP: "go up the stairs",
    Motion.GO_DOWN: "go down the stairs",
}

RELATION_SUFFIX = {
    Relation.LEFT: " down the left of the ",
    Relation.RIGHT: " down the right of the ",
    Relation.TOWARD: " toward the ",
}

STOP_PLAIN = "Stop there"
STOP_AT = "Stop right at the "


def render_atom(turn: Turn, motion: Motion, object_ref: ObjectRef | None) -> str:
    """Render one clause from the template table (no trailing period)."""
    if motion is Motion.STOP:
        if object_ref is None:
            return STOP_PLAIN
        if object_ref.relation is Relation.TOWARD:
            return f"{STOP_AT}{object_ref.category}"
        return f"{STOP_AT}{object_ref.relation.value} of the {object_ref.category}"
    clause = TURN_PREFIX[turn] + MOTION_CORE[motion]
    if object_ref is not None:
        clause += RELATION_SUFFIX[object_ref.relation] + object_ref.category
    return clause[0].upper() + clause[1:]


def make_atom(turn: Turn, motion: Motion, object_ref: ObjectRef | None = None) -> AtomicInstruction:
    if motion is Motion.STOP and turn is not Turn.NONE:
        raise ValueError("stop atoms carry no turn")
    if object_ref is not None and not object_ref.category.strip():
        raise ValueError("object reference category must be non-empty")
    return AtomicInstruction(turn, motion, object_ref, render_atom(turn, motion, object_ref))


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


def classify_turn(bearing: float) -> Turn:
    """Map a signed bearing in (-pi, pi] to a turn class."""
    if abs(bearing) < TURN_STRAIGHT_BOUND:
        return Turn.NONE
    if TURN_STRAIGHT_BOUND <= bearing < TURN_AROUND_BOUND:
        return Turn.RIGHT
    if -TURN_AROUND_BOUND < bearing <= -TURN_STRAIGHT_BOUND:
        return Turn.LEFT
    return Turn.AROUND


def classify_vertical(delta_z: float, cross_region: bool) -> Motion:
    """Stairs need both a real height change and a region change."""
    if cross_region and delta_z > VERTICAL_DELTA:
        return Motion.GO_UP
    if cross_region and delta_z < -VERTICAL_DELTA:
        return Motion.GO_DOWN
    return Motion.WALK_STRAIGHT


def _panorama_region(scene: SceneModel, vid: str) -> int | None:
    for pano in scene.panoramas:
        if pano.name == vid:
            return pano.region_index
    return None


# ---------------------------------------------------------------------------
# Crafting
# ---------------------------------------------------------------------------


def atomic_for_edge(scene: SceneModel, graph: NavGraph, cfg: SaliencyConfig,
                    cur: str, nxt: str, cur_heading: float) -> tuple[AtomicInstruction, float]:
    """Atom describing the move cur -> nxt; returns (atom, new heading)."""
    if not graph.has_edge(cur, nxt):
        raise ValueError(f"({cur!r}, {nxt!r}) is not an edge")
    p_cur = graph.position(cur)
    p_nxt = graph.position(nxt)
    target = heading_to(p_cur, p_nxt)
    turn = classify_turn(relative_bearing(cur_heading, target))

    region_cur = _panorama_region(scene, cur)
    region_nxt = _panorama_region(scene, nxt)
    cross = region_cur is not None and region_nxt is not None and region_cur != region_nxt
    motion = classify_vertical(p_nxt[2] - p_cur[2], cross)

    candidates = filter_candidates(observe(scene, p_cur, cfg.max_distance), cfg)
    best = best_object(candidates, target, cfg.fov)
    ref = None
    if best is not None:
        ref = ObjectRef(best.category, side_of_travel(target, best.heading))
    return make_atom(turn, motion, ref), target


def stop_atom(scene: SceneModel, node: str, incoming_heading: float,
              cfg: SaliencyConfig) -> AtomicInstruction:
    """Terminal atom at a node, anchored on the best object ahead if any."""
    position = _scene_position(scene, node)
    ref = None
    if position is not None:
        candidates = filter_candidates(observe(scene, position, cfg.max_distance), cfg)
        best = best_object(candidates, incoming_heading, cfg.fov)
        if best is not None:
            ref = ObjectRef(best.category, side_of_travel(incoming_heading, best.heading))
    return make_atom(Turn.NONE, Motion.STOP, ref)


def _scene_position(scene: SceneModel, vid: str) -> Vec3 | None:
    for pano in scene.panoramas:
        if pano.name == vid:
            return pano.position
    return None


def craft_instruction(scene: SceneModel, graph: NavGraph, path: PathSpec,
                      cfg: SaliencyConfig) -> CraftedInstruction:
    """One atom per edge plus a stop atom, headings threaded in order."""
    heading = path.heading_0
    atoms: list[AtomicInstruction] = []
    headings: list[float] = []
    for cur, nxt in zip(path.path, path.path[1:]):
        atom, heading = atomic_for_edge(scene, graph, cfg, cur, nxt, heading)
        atoms.append(atom)
        headings.append(heading)
    atoms.append(stop_atom(scene, path.path[-1], heading, cfg))
    headings.append(heading)
    text = ". ".join(a.text for a in atoms) + "."
    return CraftedInstruction(tuple(atoms), text, tuple(headings))
