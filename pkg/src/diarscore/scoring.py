"""Per-file and corpus scoring, plus reference SAD derivation."""

from __future__ import annotations

import logging
import os
from collections import defaultdict
from collections.abc import Collection, Iterable, Mapping
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import EmptyReference, MissingFile, MissingRegions
from .formats import SadSegment, ScoringRegions, Turn
from .metrics import (
    DerComponents,
    JerComponents,
    SpeakerMapping,
    build_overlap_matrix,
    compute_der,
    compute_jer,
    optimal_mapping,
)
from .timeline import Timeline, bridge_gaps, clip, normalize, subtract, to_ticks, union

logger = logging.getLogger(__name__)

JOBS_ENV = "DIARSCORE_JOBS"


@dataclass(frozen=True)
class FileScore:
    file_id: str
    der: DerComponents
    jer: JerComponents
    mapping: SpeakerMapping
    n_ref: int
    n_sys: int
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class AggregateScore:
    """Pooled DER components and speaker-averaged JER over a set of files."""

    label: str
    der: DerComponents
    jer: float
    n_files: int
    n_ref: int
    n_sys: int


@dataclass(frozen=True)
class ScoreReport:
    files: tuple[FileScore, ...]
    overall: AggregateScore | None
    core: AggregateScore | None = None
    metadata: dict = field(default_factory=dict)


def speaker_timelines(turns: Iterable[Turn], regions: Timeline | None = None) -> dict[str, Timeline]:
    """Group turns by speaker, canonicalize and clip.

    Speakers whose turns all fall outside ``regions`` are kept with an empty
    timeline.
    """
    grouped: dict[str, list] = defaultdict(list)
    for t in turns:
        grouped[t.speaker].append(t.interval)
    out = {}
    for speaker, ivs in grouped.items():
        tl = normalize(ivs)
        out[speaker] = clip(tl, regions) if regions is not None else tl
    return out


def collar_zone(turns: Iterable[Turn], collar: int) -> Timeline:
    """No-score zone of ``collar`` ticks either side of each reference boundary."""
    bounds = set()
    for speaker_tl in speaker_timelines(turns).values():
        for iv in speaker_tl:
            bounds.update((iv.onset, iv.offset))
    return normalize((max(0, b - collar), b + collar) for b in sorted(bounds))


def score_file(
    ref_turns: Iterable[Turn],
    sys_turns: Iterable[Turn],
    regions: ScoringRegions | None,
    file_id: str,
    *,
    collar: float = 0.0,
) -> FileScore:
    """Score one recording.

    Turns for other files are ignored. With ``regions=None`` the whole
    recording is scored; otherwise ``file_id`` must have UEM regions.

    Raises:
        MissingRegions: if ``regions`` lacks ``file_id``.
        EmptyReference: if nothing of the reference falls in scored time.
    """
    ref_turns = [t for t in ref_turns if t.file_id == file_id]
    sys_turns = [t for t in sys_turns if t.file_id == file_id]

    region_tl: Timeline | None = None
    if regions is not None:
        if file_id not in regions:
            raise MissingRegions(file_id)
        region_tl = regions.timeline(file_id)
    collar_ticks = to_ticks(collar)
    if collar_ticks > 0:
        if region_tl is None:
            end = max((t.offset for t in [*ref_turns, *sys_turns]), default=0)
            region_tl = normalize([(0, end)]) if end > 0 else Timeline.empty()
        region_tl = subtract(region_tl, collar_zone(ref_turns, collar_ticks))

    ref = speaker_timelines(ref_turns, region_tl)
    sys = speaker_timelines(sys_turns, region_tl)
    mapping = optimal_mapping(build_overlap_matrix(ref, sys))
    try:
        der = compute_der(ref, sys, mapping)
        jer = compute_jer(ref, sys, mapping)
    except EmptyReference as exc:
        raise EmptyReference(f"{file_id}: {exc}") from None
    notes = tuple(
        f"reference speaker {s.speaker!r} has no speech in the scoring regions" for s in jer.speakers if s.unscored
    )
    return FileScore(file_id, der, jer, mapping, n_ref=len(ref), n_sys=len(sys), notes=notes)


def aggregate(label: str, scores: Collection[FileScore]) -> AggregateScore:
    der = DerComponents(0, 0, 0, 0)
    speaker_jers = []
    for s in scores:
        der = der + s.der
        speaker_jers.extend(sp.jer for sp in s.jer.speakers)
    if not speaker_jers:
        raise EmptyReference(f"{label}: no reference speakers")
    return AggregateScore(
        label=label,
        der=der,
        jer=sum(speaker_jers) / len(speaker_jers),
        n_files=len(scores),
        n_ref=sum(s.n_ref for s in scores),
        n_sys=sum(s.n_sys for s in scores),
    )


def _jobs(jobs: int | None) -> int:
    if jobs is None:
        try:
            jobs = int(os.environ.get(JOBS_ENV, "1"))
        except ValueError:
            logger.warning("ignoring non-integer %s", JOBS_ENV)
            jobs = 1
    return max(1, jobs)


def _score_one(args):
    ref, sys, regions, file_id, collar = args
    return score_file(ref, sys, regions, file_id, collar=collar)


def score_corpus(
    ref_turns: Iterable[Turn],
    sys_turns: Iterable[Turn],
    regions: ScoringRegions | None = None,
    *,
    core: Collection[str] | None = None,
    collar: float = 0.0,
    jobs: int | None = None,
    metadata: Mapping | None = None,
) -> ScoreReport:
    """Score every reference file and pool the results.

    Reference and system turns are paired by their embedded file id. The
    OVERALL row pools DER components across files and averages JER over all
    reference speakers of all files; CORE-OVERALL does the same for the files
    listed in ``core``.

    Raises:
        MissingFile: if a file appears on only one side.
    """
    by_ref: dict[str, list[Turn]] = defaultdict(list)
    by_sys: dict[str, list[Turn]] = defaultdict(list)
    for t in ref_turns:
        by_ref[t.file_id].append(t)
    for t in sys_turns:
        by_sys[t.file_id].append(t)
    for file_id in sorted(by_ref):
        if file_id not in by_sys:
            raise MissingFile(file_id)
    for file_id in sorted(by_sys):
        if file_id not in by_ref:
            raise MissingFile(file_id, f"MissingFile: system output for {file_id!r} has no reference")

    tasks = [(by_ref[f], by_sys[f], regions, f, collar) for f in sorted(by_ref)]
    n_jobs = min(_jobs(jobs), len(tasks))
    if n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            files = tuple(pool.map(_score_one, tasks))
    else:
        files = tuple(_score_one(t) for t in tasks)

    overall = aggregate("OVERALL", files) if files else None
    core_row = None
    if core is not None:
        core_files = [s for s in files if s.file_id in core]
        if core_files:
            core_row = aggregate("CORE-OVERALL", core_files)
    meta = {"collar": float(collar)}
    meta.update(metadata or {})
    return ScoreReport(files, overall, core_row, meta)


def derive_sad(turns: Iterable[Turn], max_gap: float = 0.0) -> list[SadSegment]:
    """Speaker-agnostic speech segments: the union of all speaker turns.

    Args:
        turns: reference turns of a single file.
        max_gap: pauses of at most this many seconds are bridged.
    """
    speech = Timeline.empty()
    for tl in speaker_timelines(turns).values():
        speech = union(speech, tl)
    speech = bridge_gaps(speech, to_ticks(max_gap))
    return [SadSegment(iv.onset, iv.offset) for iv in speech]
