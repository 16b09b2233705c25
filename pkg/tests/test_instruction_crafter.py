"""Turn classification, clause templates, and whole-path crafting."""
from __future__ import annotations

import math

import pytest

from conftest import build_graph, build_scene
from navscribe.instruction_crafter import (Motion, ObjectRef, Turn, atomic_for_edge,
                                           classify_turn, classify_vertical,
                                           craft_instruction, make_atom, render_atom)
from navscribe.nav_graph import PathSpec, shortest_path
from navscribe.object_saliency import Relation, SaliencyConfig

EIGHTH = math.pi / 8


class TestClassifyTurn:
    def test_straight_band_is_open(self):
        assert classify_turn(0.0) is Turn.NONE
        assert classify_turn(EIGHTH - 1e-9) is Turn.NONE
        assert classify_turn(-EIGHTH + 1e-9) is Turn.NONE

    def test_right_band_includes_lower_bound(self):
        assert classify_turn(EIGHTH) is Turn.RIGHT
        assert classify_turn(math.pi / 2) is Turn.RIGHT
        assert classify_turn(5 * EIGHTH - 1e-9) is Turn.RIGHT

    def test_left_band_mirrors_right(self):
        assert classify_turn(-EIGHTH) is Turn.LEFT
        assert classify_turn(-math.pi / 2) is Turn.LEFT
        assert classify_turn(-5 * EIGHTH + 1e-9) is Turn.LEFT

    def test_around_band(self):
        assert classify_turn(5 * EIGHTH) is Turn.AROUND
        assert classify_turn(-5 * EIGHTH) is Turn.AROUND
        assert classify_turn(math.pi) is Turn.AROUND


class TestClassifyVertical:
    def test_needs_both_height_and_region_change(self):
        assert classify_vertical(1.1, True) is Motion.GO_UP
        assert classify_vertical(1.1, False) is Motion.WALK_STRAIGHT
        assert classify_vertical(-0.9, True) is Motion.GO_DOWN

    def test_threshold_is_strict(self):
        assert classify_vertical(0.5, True) is Motion.WALK_STRAIGHT
        assert classify_vertical(-0.5, True) is Motion.WALK_STRAIGHT


class TestTemplates:
    def test_plain_walk(self):
        assert render_atom(Turn.NONE, Motion.WALK_STRAIGHT, None) == "Walk straight"

    def test_turn_with_side_object(self):
        ref = ObjectRef("painting", Relation.LEFT)
        assert (render_atom(Turn.LEFT, Motion.WALK_STRAIGHT, ref)
                == "Turn left, walk straight down the left of the painting")

    def test_around_and_stairs(self):
        ref = ObjectRef("sofa", Relation.TOWARD)
        assert (render_atom(Turn.AROUND, Motion.GO_UP, ref)
                == "Turn around, go up the stairs toward the sofa")
        assert render_atom(Turn.RIGHT, Motion.GO_DOWN, None) == "Turn right, go down the stairs"

    def test_stop_variants(self):
        assert render_atom(Turn.NONE, Motion.STOP, None) == "Stop there"
        assert (render_atom(Turn.NONE, Motion.STOP, ObjectRef("sofa", Relation.TOWARD))
                == "Stop right at the sofa")
        assert (render_atom(Turn.NONE, Motion.STOP, ObjectRef("sofa", Relation.RIGHT))
                == "Stop right at the right of the sofa")

    def test_make_atom_rejects_turning_stop(self):
        with pytest.raises(ValueError, match="no turn"):
            make_atom(Turn.LEFT, Motion.STOP)

    def test_make_atom_rejects_blank_category(self):
        with pytest.raises(ValueError):
            make_atom(Turn.NONE, Motion.WALK_STRAIGHT, ObjectRef(" ", Relation.TOWARD))


class TestCrafting:
    def test_single_edge_exact_text(self, saliency):
        positions = {"n0": (0.0, 0.0, 1.5), "n1": (-2.0, 0.0, 1.5)}
        graph = build_graph(positions, [("n0", "n1")])
        angle = 3 * math.pi / 2 + 0.3
        painting = (2 * math.sin(angle), 2 * math.cos(angle), 1.5)
        scene = build_scene(
            objects=[("painting", painting, (0.6, 0.5, 0.1))],
            panoramas=[("n0", 0, positions["n0"]), ("n1", 0, positions["n1"])],
        )
        path = PathSpec("mini", ("n0", "n1"), 0.0, 2.0)
        crafted = craft_instruction(scene, graph, path, saliency)
        assert crafted.text == ("Turn left, walk straight down the left of the painting. "
                                "Stop there.")

    def test_atom_per_edge_plus_stop(self, loop_bundle, saliency):
        scene, graph = loop_bundle
        path = shortest_path(graph, "loop0_vp00", "loop0_vp05")
        crafted = craft_instruction(scene, graph, path, saliency)
        assert len(crafted.atoms) == path.hops + 1
        assert len(crafted.headings) == len(crafted.atoms)
        assert crafted.atoms[-1].motion is Motion.STOP
        assert crafted.text.endswith(".")

    def test_hub_edges_anchor_on_unique_objects(self, hub_bundle, saliency):
        scene, graph = hub_bundle
        path = shortest_path(graph, "hub0_vp00", "hub0_vp04")
        crafted = craft_instruction(scene, graph, path, saliency)
        first = crafted.atoms[0]
        assert first.object_ref is not None
        assert first.object_ref.category == "piano"

    def test_stair_edges_become_vertical_clauses(self, stairs_bundle, saliency):
        scene, graph = stairs_bundle
        up = craft_instruction(scene, graph,
                               shortest_path(graph, "stairs0_vp05", "stairs0_vp09"),
                               saliency)
        motions = [a.motion for a in up.atoms]
        assert motions.count(Motion.GO_UP) == 2
        assert "up the stairs" in up.text

        down = craft_instruction(scene, graph,
                                 shortest_path(graph, "stairs0_vp14", "stairs0_vp17"),
                                 saliency)
        assert Motion.GO_DOWN in [a.motion for a in down.atoms]

    def test_headings_follow_edge_directions(self, square_graph, saliency):
        scene = build_scene(objects=[], panoramas=[])
        path = PathSpec("square", ("va", "vb", "vc"), 0.0, 2.0)
        crafted = craft_instruction(scene, square_graph, path, saliency)
        assert crafted.headings[0] == pytest.approx(math.pi / 2)  # east
        assert crafted.headings[1] == pytest.approx(0.0)          # north

    def test_crafting_is_deterministic(self, loop_bundle, saliency):
        scene, graph = loop_bundle
        path = shortest_path(graph, "loop0_vp02", "loop0_vp08")
        a = craft_instruction(scene, graph, path, saliency)
        b = craft_instruction(scene, graph, path, saliency)
        assert a == b

    def test_non_edge_rejected(self, square_graph, saliency):
        scene = build_scene(objects=[], panoramas=[])
        with pytest.raises(ValueError, match="not an edge"):
            atomic_for_edge(scene, square_graph, saliency, "va", "vc", 0.0)
