"""Readers and writers for RTTM, UEM and HTK speech-label files.

All three are line-oriented, whitespace-delimited text. Readers accept any
run of spaces/tabs between fields and skip blank lines and ``;;`` comments;
writers emit single spaces and fixed-point seconds with four decimals.

Times are stored as integer ticks (see :mod:`diarscore.timeline`).
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from typing import NamedTuple, TextIO, Union

from .errors import (
    BadLabel,
    BadNumber,
    BadTag,
    FieldCount,
    FormatError,
    InvariantViolation,
    OverlappingRegions,
    OverlapViolation,
)
from .timeline import Interval, Timeline, format_seconds, normalize, to_ticks

Source = Union[str, TextIO, Iterable[str]]

NA = "<NA>"
SPEAKER = "SPEAKER"
SPEECH = "speech"

RTTM_FIELDS = 10
UEM_FIELDS = 4
HTK_FIELDS = 3


def _records(source: Source) -> Iterator[tuple[int, list[str]]]:
    """Yield ``(line_no, fields)`` for every non-blank, non-comment line."""
    lines = source.splitlines() if isinstance(source, str) else source
    for line_no, line in enumerate(lines, start=1):
        fields = line.split()
        if not fields or fields[0].startswith(";;"):
            continue
        yield line_no, fields


def _seconds(token: str, line_no: int, name: str) -> int:
    try:
        ticks = to_ticks(token)
    except ValueError:
        raise BadNumber(line_no, f"cannot parse {token!r} as seconds", name) from None
    if ticks < 0:
        raise BadNumber(line_no, f"negative time {token!r}", name)
    return ticks


def _is_token(value: str) -> bool:
    return bool(value) and value.split() == [value]


# ---------------------------------------------------------------- RTTM


@dataclass(frozen=True)
class Turn:
    """One RTTM ``SPEAKER`` record; ``onset`` and ``duration`` are ticks."""

    file_id: str
    onset: int
    duration: int
    speaker: str
    channel: int = 1
    type_tag: str = SPEAKER
    orthography: str = NA
    speaker_type: str = NA
    confidence: str = NA
    lookahead: str = NA

    @property
    def offset(self) -> int:
        return self.onset + self.duration

    @property
    def interval(self) -> Interval:
        return Interval(self.onset, self.offset)


@dataclass
class RttmScan:
    """Everything learned from one RTTM stream: the turns plus diagnostics."""

    turns: list[Turn] = field(default_factory=list)
    line_numbers: list[int] = field(default_factory=list)
    errors: list[FormatError] = field(default_factory=list)
    warnings: list[FormatError] = field(default_factory=list)
    file_ids_by_line: dict[int, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.errors


def _rttm_line(line_no: int, f: list[str], strict: bool, warnings: list[FormatError]) -> Turn | None:
    if len(f) != RTTM_FIELDS:
        raise FieldCount(line_no, f"expected {RTTM_FIELDS} fields, found {len(f)}")
    tag, file_id, chan, onset_s, dur_s, orth, stype, speaker, conf, look = f

    soft: list[FormatError] = []
    if tag != SPEAKER:
        soft.append(BadTag(line_no, f"type must be {SPEAKER!r}, found {tag!r}", "type"))
    try:
        channel = int(chan)
    except ValueError:
        raise BadNumber(line_no, f"channel {chan!r} is not an integer", "channel") from None
    if channel < 1:
        raise BadNumber(line_no, f"channel must be >= 1, found {channel}", "channel")
    if channel != 1:
        soft.append(BadTag(line_no, f"channel must be 1, found {channel}", "channel"))
    for name, value in (("orthography", orth), ("speaker_type", stype), ("confidence", conf), ("lookahead", look)):
        if value != NA:
            soft.append(BadTag(line_no, f"{name} must be {NA!r}, found {value!r}", name))

    onset = _seconds(onset_s, line_no, "onset")
    duration = _seconds(dur_s, line_no, "duration")
    if duration == 0:
        problem = BadNumber(line_no, f"turn duration {dur_s!r} is not positive", "duration")
        if strict:
            raise problem
        warnings.extend(soft)
        warnings.append(problem)
        return None

    if soft:
        if strict:
            raise soft[0]
        warnings.extend(soft)
    return Turn(
        file_id=file_id,
        onset=onset,
        duration=duration,
        speaker=speaker,
        channel=channel,
        type_tag=tag,
        orthography=orth,
        speaker_type=stype,
        confidence=conf,
        lookahead=look,
    )


def scan_rttm(source: Source, *, strict: bool = True) -> RttmScan:
    """Parse every line, collecting turns and positioned diagnostics.

    In lenient mode, deviations in the type tag, channel and ``<NA>``
    placeholder fields (and zero-length turns, which are dropped) become
    warnings instead of errors.
    """
    scan = RttmScan()
    for line_no, fields in _records(source):
        if len(fields) > 1:
            scan.file_ids_by_line[line_no] = fields[1]
        try:
            turn = _rttm_line(line_no, fields, strict, scan.warnings)
        except FormatError as exc:
            scan.errors.append(exc)
            continue
        if turn is not None:
            scan.turns.append(turn)
            scan.line_numbers.append(line_no)
    return scan


def parse_rttm(source: Source, *, strict: bool = True) -> list[Turn]:
    """Parse an RTTM stream, raising the first diagnostic if any line is bad."""
    scan = scan_rttm(source, strict=strict)
    if scan.errors:
        raise scan.errors[0]
    return scan.turns


def _check_turn(turn: Turn) -> None:
    if turn.duration <= 0:
        raise InvariantViolation(f"turn {turn!r}: duration must be positive")
    if turn.onset < 0:
        raise InvariantViolation(f"turn {turn!r}: onset must be non-negative")
    if turn.channel < 1:
        raise InvariantViolation(f"turn {turn!r}: channel must be >= 1")
    tokens = (turn.type_tag, turn.file_id, turn.speaker, turn.orthography, turn.speaker_type, turn.confidence, turn.lookahead)
    if not all(_is_token(t) for t in tokens):
        raise InvariantViolation(f"turn {turn!r}: text fields must be non-empty and whitespace-free")


def format_turn(turn: Turn) -> str:
    _check_turn(turn)
    return " ".join(
        (
            turn.type_tag,
            turn.file_id,
            str(turn.channel),
            format_seconds(turn.onset),
            format_seconds(turn.duration),
            turn.orthography,
            turn.speaker_type,
            turn.speaker,
            turn.confidence,
            turn.lookahead,
        )
    )


def write_rttm(turns: Iterable[Turn]) -> str:
    return "".join(format_turn(t) + "\n" for t in turns)


# ---------------------------------------------------------------- UEM


@dataclass(frozen=True)
class FileRegions:
    channel: int
    regions: tuple[Interval, ...]

    @property
    def timeline(self) -> Timeline:
        return normalize(self.regions)


class ScoringRegions(Mapping[str, FileRegions]):
    """Per-file scoring regions read from a UEM file.

    Regions of one file are sorted by onset and pairwise disjoint; touching
    regions stay separate so that writing reproduces the input lines.
    """

    def __init__(self, files: Mapping[str, FileRegions] | None = None):
        self._files = dict(files or {})

    def __getitem__(self, file_id: str) -> FileRegions:
        return self._files[file_id]

    def __iter__(self) -> Iterator[str]:
        return iter(self._files)

    def __len__(self) -> int:
        return len(self._files)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScoringRegions):
            return NotImplemented
        return self._files == other._files

    def __repr__(self) -> str:
        return f"ScoringRegions({self._files!r})"

    def timeline(self, file_id: str) -> Timeline:
        return self._files[file_id].timeline

    @classmethod
    def from_seconds(cls, layout: Mapping[str, Iterable[tuple[object, object]]], channel: int = 1) -> ScoringRegions:
        """Convenience constructor: ``{"f1": [(0, 90), (210, 300)]}``."""
        files = {}
        for file_id, pairs in layout.items():
            ivs = sorted(Interval(to_ticks(a), to_ticks(b)) for a, b in pairs)  # type: ignore[arg-type]
            files[file_id] = FileRegions(channel, tuple(ivs))
        return cls(files)


def parse_uem(source: Source) -> ScoringRegions:
    """Parse a UEM stream into per-file scoring regions.

    Raises:
        FieldCount, BadNumber: on a malformed line.
        BadTag: if one file's regions name different channels.
        OverlappingRegions: if two regions of one file overlap.
    """
    grouped: dict[str, list[tuple[Interval, int]]] = {}
    channels: dict[str, int] = {}
    for line_no, f in _records(source):
        if len(f) != UEM_FIELDS:
            raise FieldCount(line_no, f"expected {UEM_FIELDS} fields, found {len(f)}")
        file_id, chan, onset_s, offset_s = f
        try:
            channel = int(chan)
        except ValueError:
            raise BadNumber(line_no, f"channel {chan!r} is not an integer", "channel") from None
        if channel < 1:
            raise BadNumber(line_no, f"channel must be >= 1, found {channel}", "channel")
        if channels.setdefault(file_id, channel) != channel:
            raise BadTag(line_no, f"{file_id}: regions on channels {channels[file_id]} and {channel}", "channel")
        onset = _seconds(onset_s, line_no, "onset")
        offset = _seconds(offset_s, line_no, "offset")
        if offset <= onset:
            raise BadNumber(line_no, f"offset {offset_s} is not after onset {onset_s}", "offset")
        grouped.setdefault(file_id, []).append((Interval(onset, offset), line_no))

    files = {}
    for file_id, items in grouped.items():
        items.sort()
        for (prev, _), (cur, line_no) in zip(items, items[1:]):
            if cur.onset < prev.offset:
                raise OverlappingRegions(line_no, f"regions of {file_id} overlap")
        files[file_id] = FileRegions(channels[file_id], tuple(iv for iv, _ in items))
    return ScoringRegions(files)


def write_uem(regions: ScoringRegions) -> str:
    lines = []
    for file_id in sorted(regions):
        entry = regions[file_id]
        if not _is_token(file_id) or entry.channel < 1:
            raise InvariantViolation(f"bad UEM entry for {file_id!r}")
        ivs = sorted(entry.regions)
        for prev, cur in zip(ivs, ivs[1:]):
            if cur.onset < prev.offset:
                raise InvariantViolation(f"regions of {file_id} overlap")
        for iv in ivs:
            if iv.offset <= iv.onset or iv.onset < 0:
                raise InvariantViolation(f"degenerate region {iv} in {file_id}")
            lines.append(f"{file_id} {entry.channel} {format_seconds(iv.onset)} {format_seconds(iv.offset)}\n")
    return "".join(lines)


# ---------------------------------------------------------------- HTK labels


class SadSegment(NamedTuple):
    onset: int
    offset: int
    label: str = SPEECH


def parse_htk_lab(source: Source) -> list[SadSegment]:
    """Parse an HTK speech-segmentation label file, sorted by onset.

    Raises:
        FieldCount, BadNumber, BadLabel: on a malformed line.
        OverlapViolation: if two segments share time.
    """
    segments: list[tuple[SadSegment, int]] = []
    for line_no, f in _records(source):
        if len(f) != HTK_FIELDS:
            raise FieldCount(line_no, f"expected {HTK_FIELDS} fields, found {len(f)}")
        onset_s, offset_s, label = f
        onset = _seconds(onset_s, line_no, "onset")
        offset = _seconds(offset_s, line_no, "offset")
        if offset <= onset:
            raise BadNumber(line_no, f"offset {offset_s} is not after onset {onset_s}", "offset")
        if label != SPEECH:
            raise BadLabel(line_no, f"label must be {SPEECH!r}, found {label!r}", "label")
        segments.append((SadSegment(onset, offset, label), line_no))
    segments.sort()
    for (prev, _), (cur, line_no) in zip(segments, segments[1:]):
        if cur.onset < prev.offset:
            raise OverlapViolation(line_no, "speech segments overlap")
    return [seg for seg, _ in segments]


def write_htk_lab(segments: Iterable[SadSegment]) -> str:
    ordered = sorted(segments)
    for seg in ordered:
        if seg.offset <= seg.onset or seg.onset < 0:
            raise InvariantViolation(f"degenerate segment {seg}")
        if not _is_token(seg.label):
            raise InvariantViolation(f"bad label in {seg}")
    for prev, cur in zip(ordered, ordered[1:]):
        if cur.onset < prev.offset:
            raise InvariantViolation(f"segments {prev} and {cur} overlap")
    return "".join(f"{format_seconds(s.onset)} {format_seconds(s.offset)} {s.label}\n" for s in ordered)
