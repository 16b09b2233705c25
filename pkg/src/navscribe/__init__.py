"""Compile indoor scenes and navigation graphs into instruction data.

The package turns scene metadata (.house files) and viewpoint
connectivity graphs into navigation instructions with per-word object
supervision, re-executes those instructions to validate them, and ships
the loss arithmetic used to weigh the extra word-prediction tasks.
"""
from __future__ import annotations

from .aux_loss_math import (LossBreakdown, Vocab, WordTargets, gradient_check,
                            grad_logits, log_softmax, nll, sequence_loss,
                            word_loss, word_loss_crafted, word_loss_objects)
from .config import (AuxConfig, ConfigError, FileConfig, RunConfig,
                     SamplerConfig, load_config)
from .fixtures import (FixtureScene, all_scenes, malformed_house_cases,
                       write_scene_files)
from .instruction_crafter import (AtomicInstruction, CraftedInstruction, Motion,
                                  ObjectRef, Turn, classify_turn,
                                  classify_vertical, craft_instruction,
                                  make_atom, render_atom)
from .instruction_executor import (DEFAULT_SUCCESS_RADIUS, ExecutionResult,
                                   InstructionParseError, NavMetrics, evaluate,
                                   evaluate_batch, execute, parse_crafted)
from .nav_graph import (ConnectivityError, NavGraph, PathSpec, SampleResult,
                        Viewpoint, geodesic_distance, neighbors,
                        parse_connectivity, paths_from_json, paths_to_json,
                        sample_paths, shortest_path)
from .object_saliency import (DEFAULT_BLACKLIST, Relation, SaliencyConfig,
                              best_object, filter_candidates, observe,
                              side_of_travel)
from .render_svg import RenderSpec, render_viewpoint
from .rng import SplitMix64
from .scene_metadata import (Category, HouseParseError, Panorama, Region,
                             SceneJsonError, SceneModel, SceneObject,
                             category_name, head_noun, parse_house,
                             read_scene_json, write_scene_json)
from .supervision_export import (DatasetRecord, WordObjectSupervision,
                                 align_words_to_nodes, build_supervision,
                                 emit_r2r_json, emit_supervision_json,
                                 read_r2r_json, read_supervision_json,
                                 tokenize, top_n_objects)
from .text_ablation import (AblationMode, LexiconError, ablate,
                            load_default_lexicon, load_lexicon)
from .view_geometry import (FovConfig, ObservedObject, elevation_to,
                            heading_is_degenerate, heading_to, in_fov,
                            projected_area, relative_bearing, wrap_angle)

__version__ = "0.1.0"

__all__ = [
    "AblationMode", "AtomicInstruction", "AuxConfig", "Category", "ConfigError",
    "ConnectivityError", "CraftedInstruction", "DatasetRecord",
    "DEFAULT_BLACKLIST", "DEFAULT_SUCCESS_RADIUS", "ExecutionResult",
    "FileConfig", "FixtureScene", "FovConfig", "HouseParseError",
    "InstructionParseError",
    "LexiconError", "LossBreakdown", "Motion", "NavGraph", "NavMetrics",
    "ObjectRef", "ObservedObject", "Panorama", "PathSpec", "Region", "Relation",
    "RenderSpec", "RunConfig", "SaliencyConfig", "SampleResult", "SamplerConfig",
    "SceneJsonError", "SceneModel", "SceneObject", "SplitMix64", "Turn",
    "Viewpoint", "Vocab", "WordObjectSupervision", "WordTargets",
    "ablate", "align_words_to_nodes", "all_scenes", "best_object",
    "build_supervision",
    "category_name", "classify_turn", "classify_vertical", "craft_instruction",
    "elevation_to", "emit_r2r_json", "emit_supervision_json", "evaluate",
    "evaluate_batch", "execute", "filter_candidates", "geodesic_distance",
    "gradient_check", "grad_logits", "head_noun", "heading_is_degenerate",
    "heading_to", "in_fov", "load_config", "load_default_lexicon",
    "load_lexicon", "log_softmax", "make_atom", "malformed_house_cases",
    "neighbors", "nll", "observe",
    "parse_connectivity", "parse_crafted", "parse_house", "paths_from_json",
    "paths_to_json", "projected_area", "read_r2r_json", "read_scene_json",
    "read_supervision_json", "relative_bearing", "render_atom",
    "render_viewpoint", "sample_paths", "sequence_loss", "shortest_path",
    "side_of_travel", "tokenize", "top_n_objects", "word_loss",
    "word_loss_crafted", "word_loss_objects", "wrap_angle", "write_scene_files",
    "write_scene_json",
]
