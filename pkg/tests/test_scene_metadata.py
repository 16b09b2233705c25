"""House text parsing, validation errors, and canonical scene JSON."""
from __future__ import annotations

import json

import pytest

from navscribe import fixtures
from navscribe.scene_metadata import (HouseParseError, SceneJsonError, category_name,
                                      head_noun, parse_house, read_scene_json,
                                      write_scene_json)


class TestTinyHouse:
    def test_counts(self, tiny_scene):
        assert tiny_scene.scan_id == "tiny"
        assert len(tiny_scene.categories) == 2
        assert len(tiny_scene.regions) == 2
        assert len(tiny_scene.objects) == 3
        assert len(tiny_scene.panoramas) == 4

    def test_category_names_cleaned(self, tiny_scene):
        assert tiny_scene.categories[0].name == "king bed"
        assert tiny_scene.categories[1].name == "coffee table"
        assert tiny_scene.categories[0].mpcat40_name == "bed"

    def test_panorama_fields(self, tiny_scene):
        p = tiny_scene.panoramas[0]
        assert p.name == "p000"
        assert p.region_index == 0
        assert p.position == (-1.0, 0.0, 1.5)

    def test_negative_region_index_allowed(self, tiny_scene):
        assert tiny_scene.panoramas[3].region_index == -1
        assert tiny_scene.objects[2].region_index == -1

    def test_object_geometry(self, tiny_scene):
        obj = tiny_scene.objects[1]
        assert obj.category_index == 1
        assert obj.radii == (0.6, 0.5, 0.3)
        ax2 = obj.axis2()
        assert ax2 == pytest.approx((0.0, 0.0, 1.0), abs=1e-6)


def test_category_name_lookup(tiny_scene):
    assert category_name(tiny_scene, 0) == "king bed"
    assert category_name(tiny_scene, 1) == "coffee table"
    with pytest.raises(ValueError):
        category_name(tiny_scene, 99)


def test_head_noun():
    assert head_noun("chest of drawers") == "drawers"
    assert head_noun("bed") == "bed"
    with pytest.raises(ValueError):
        head_noun("   ")


@pytest.mark.parametrize(
    "label,text,line", fixtures.malformed_house_cases(),
    ids=[case[0] for case in fixtures.malformed_house_cases()],
)
def test_malformed_inputs_name_the_line(label, text, line):
    with pytest.raises(HouseParseError) as err:
        parse_house(text)
    assert err.value.line_number == line
    assert f"line {line}:" in str(err.value)


def test_header_must_come_first():
    lines = fixtures.TINY_HOUSE.splitlines()
    swapped = "\n".join([lines[1], lines[0]] + lines[2:]) + "\n"
    with pytest.raises(HouseParseError) as err:
        parse_house(swapped)
    assert err.value.line_number == 1


def test_second_header_rejected():
    lines = fixtures.TINY_HOUSE.splitlines()
    doubled = "\n".join([lines[0], lines[0]] + lines[1:]) + "\n"
    with pytest.raises(HouseParseError) as err:
        parse_house(doubled)
    assert err.value.line_number == 2


def test_nonzero_padding_token_rejected():
    # Token 3 of the header is reserved and must be the literal "0".
    lines = fixtures.TINY_HOUSE.splitlines()
    tokens = lines[0].split()
    tokens[3] = "1"
    bad = "\n".join([" ".join(tokens)] + lines[1:]) + "\n"
    with pytest.raises(HouseParseError) as err:
        parse_house(bad)
    assert err.value.line_number == 1


def test_declared_count_mismatch():
    lines = fixtures.TINY_HOUSE.splitlines()
    tokens = lines[0].split()
    tokens[8] = "4"  # object count
    bad = "\n".join([" ".join(tokens)] + lines[1:]) + "\n"
    with pytest.raises(HouseParseError, match="count mismatch"):
        parse_house(bad)


def test_region_level_out_of_range():
    text = fixtures.TINY_HOUSE.replace(
        "R 0 0 0 0 b", "R 0 3 0 0 b"
    )
    with pytest.raises(HouseParseError, match="level"):
        parse_house(text)


class TestSceneJson:
    def test_round_trip_preserves_model(self, tiny_scene):
        again = read_scene_json(write_scene_json(tiny_scene))
        assert again == tiny_scene

    def test_emission_is_a_byte_fixed_point(self, tiny_scene):
        first = write_scene_json(tiny_scene)
        second = write_scene_json(read_scene_json(first))
        assert first == second

    def test_key_order(self, tiny_scene):
        text = write_scene_json(tiny_scene)
        root = list(json.loads(text).keys())
        assert root == ["scan_id", "categories", "regions", "objects", "panoramas"]
        cat = list(json.loads(text)["categories"][0].keys())
        assert cat == ["index", "mapping_index", "name", "mpcat40_index", "mpcat40_name"]

    def test_unknown_root_key_rejected(self, tiny_scene):
        doc = json.loads(write_scene_json(tiny_scene))
        doc["extra"] = 1
        with pytest.raises(SceneJsonError):
            read_scene_json(json.dumps(doc))

    def test_missing_record_key_rejected(self, tiny_scene):
        doc = json.loads(write_scene_json(tiny_scene))
        del doc["objects"][0]["radii"]
        with pytest.raises(SceneJsonError) as err:
            read_scene_json(json.dumps(doc))
        assert "objects[0]" in str(err.value)

    def test_bool_is_not_an_int(self, tiny_scene):
        doc = json.loads(write_scene_json(tiny_scene))
        doc["objects"][0]["index"] = True
        with pytest.raises(SceneJsonError):
            read_scene_json(json.dumps(doc))

    def test_shared_validation_applies_to_json(self, tiny_scene):
        doc = json.loads(write_scene_json(tiny_scene))
        doc["objects"][1]["category_index"] = 9
        with pytest.raises(SceneJsonError) as err:
            read_scene_json(json.dumps(doc))
        assert "objects[1]" in str(err.value)

    def test_not_an_object_document(self):
        with pytest.raises(SceneJsonError):
            read_scene_json("[1, 2]")


def test_bundled_fixture_scenes_parse():
    for fix in fixtures.all_scenes():
        scene = parse_house(fix.house_text)
        assert scene.scan_id == fix.name
        assert scene.objects and scene.panoramas
