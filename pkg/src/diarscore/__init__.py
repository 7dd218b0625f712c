"""Speaker diarization scoring: DER and JER with optimal speaker mapping.

The interval sweep and assignment kernels come from a compiled extension
when it is built, otherwise from an equivalent pure-Python module; see
``diarscore.BACKEND``.
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .errors import (
    DiarScoreError,
    EmptyReference,
    FormatError,
    InvariantViolation,
    MissingFile,
    MissingRegions,
    ScoringError,
)
from .formats import (
    SadSegment,
    ScoringRegions,
    Turn,
    parse_htk_lab,
    parse_rttm,
    parse_uem,
    scan_rttm,
    write_htk_lab,
    write_rttm,
    write_uem,
)
from .metrics import (
    DerComponents,
    JerComponents,
    OverlapMatrix,
    SpeakerMapping,
    build_overlap_matrix,
    compute_der,
    compute_jer,
    optimal_mapping,
)
from .reporting import emit_machine, from_json, render_table, to_json
from .scoring import FileScore, ScoreReport, derive_sad, score_corpus, score_file
from .timeline import Interval, Timeline, bridge_gaps, clip, intersect, normalize, subtract, to_ticks, union
from .validation import Manifest, ValidationReport, load_manifest, validate_submission

__all__ = [
    "BACKEND",
    "DerComponents",
    "DiarScoreError",
    "EmptyReference",
    "FileScore",
    "FormatError",
    "Interval",
    "InvariantViolation",
    "JerComponents",
    "Manifest",
    "MissingFile",
    "MissingRegions",
    "OverlapMatrix",
    "SadSegment",
    "ScoreReport",
    "ScoringError",
    "ScoringRegions",
    "SpeakerMapping",
    "Timeline",
    "Turn",
    "ValidationReport",
    "bridge_gaps",
    "build_overlap_matrix",
    "clip",
    "compute_der",
    "compute_jer",
    "derive_sad",
    "emit_machine",
    "from_json",
    "intersect",
    "load_manifest",
    "normalize",
    "optimal_mapping",
    "parse_htk_lab",
    "parse_rttm",
    "parse_uem",
    "render_table",
    "scan_rttm",
    "score_corpus",
    "score_file",
    "subtract",
    "to_json",
    "to_ticks",
    "union",
    "validate_submission",
    "write_htk_lab",
    "write_rttm",
    "write_uem",
]
