"""Submission validity checks run before scoring.

A submission is valid when it has RTTM output for every recording in the
manifest and every line passes strict RTTM parsing. Softer findings (empty
outputs, turns outside the scoring regions, self-overlapping turns) are
reported as warnings and do not affect the verdict.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import PurePath

from .errors import BadNumber, DuplicateFileId, FieldCount
from .formats import ScoringRegions, Source, _records, _seconds, scan_rttm
from .timeline import format_seconds, normalize, overlap_duration

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class ManifestEntry:
    core: bool
    duration: int | None = None  # ticks


@dataclass(frozen=True)
class Manifest:
    entries: dict[str, ManifestEntry]

    @property
    def file_ids(self) -> list[str]:
        return sorted(self.entries)

    @property
    def core_ids(self) -> set[str]:
        return {f for f, e in self.entries.items() if e.core}

    def __contains__(self, file_id: object) -> bool:
        return file_id in self.entries


def load_manifest(source: Source) -> Manifest:
    """Read ``file_id core_flag [duration]`` records.

    Raises:
        FieldCount: if a line has fewer than 2 or more than 3 fields.
        BadNumber: for a core flag other than 0/1 or a non-positive duration.
        DuplicateFileId: if a file id repeats.
    """
    entries: dict[str, ManifestEntry] = {}
    for line_no, f in _records(source):
        if len(f) not in (2, 3):
            raise FieldCount(line_no, f"expected 2 or 3 fields, found {len(f)}")
        file_id, flag = f[0], f[1]
        if flag not in ("0", "1"):
            raise BadNumber(line_no, f"core flag must be 0 or 1, found {flag!r}", "core")
        duration = None
        if len(f) == 3:
            duration = _seconds(f[2], line_no, "duration")
            if duration == 0:
                raise BadNumber(line_no, "duration must be positive", "duration")
        if file_id in entries:
            raise DuplicateFileId(line_no, f"{file_id!r} listed twice")
        entries[file_id] = ManifestEntry(core=flag == "1", duration=duration)
    return Manifest(entries)


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    file_id: str
    line: int | None
    message: str
    source: str = ""

    def render(self) -> str:
        where = self.source or self.file_id
        if self.line is not None:
            where += f":{self.line}"
        return f"{self.severity.upper()} {self.file_id} {where}: {self.message}"


@dataclass
class ValidationReport:
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def errors(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.severity == ERROR]

    @property
    def warnings(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.severity == WARNING]

    @property
    def valid(self) -> bool:
        return not self.errors

    @property
    def verdict(self) -> str:
        return "valid" if self.valid else "invalid"

    def render(self) -> str:
        lines = ["VALID" if self.valid else "INVALID"]
        lines.extend(d.render() for d in self.diagnostics)
        lines.append(f"{len(self.errors)} error(s), {len(self.warnings)} warning(s)")
        return "\n".join(lines) + "\n"


def _stem(source_name: str) -> str:
    return PurePath(source_name).stem


def validate_submission(
    rttm_texts: Mapping[str, str],
    manifest: Manifest,
    regions: ScoringRegions | None = None,
) -> ValidationReport:
    """Check a submission against the manifest and scoring regions.

    Args:
        rttm_texts: RTTM contents keyed by source name (usually a path). A
            source with no records counts as an explicit "no speech" output
            for the recording named by its file stem.
        manifest: expected recordings.
        regions: UEM regions; when given, turns outside them are flagged.
    """
    diags: list[Diagnostic] = []
    present: set[str] = set()
    turns_by_file: dict[str, list] = defaultdict(list)

    for source in sorted(rttm_texts):
        scan = scan_rttm(rttm_texts[source], strict=True)
        stem = _stem(source)
        for exc in scan.errors:
            file_id = scan.file_ids_by_line.get(exc.line, stem)
            diags.append(Diagnostic(ERROR, file_id, exc.line, str(exc), source))
        if not scan.turns and not scan.errors:
            if stem in manifest:
                present.add(stem)
                diags.append(Diagnostic(WARNING, stem, None, "empty RTTM: system output has no speech", source))
            else:
                diags.append(Diagnostic(WARNING, stem, None, "empty RTTM does not name a manifest recording", source))
        for turn, line_no in zip(scan.turns, scan.line_numbers):
            present.add(turn.file_id)
            turns_by_file[turn.file_id].append((turn, line_no, source))

    for file_id in manifest.file_ids:
        if file_id not in present:
            diags.append(Diagnostic(ERROR, file_id, None, "MissingFile: no RTTM output for this recording"))

    for file_id in sorted(turns_by_file):
        items = turns_by_file[file_id]
        if file_id not in manifest:
            for _, line_no, source in items[:1]:
                diags.append(Diagnostic(ERROR, file_id, line_no, "recording is not in the manifest", source))
            continue
        duration = manifest.entries[file_id].duration
        if duration is not None:
            for turn, line_no, source in items:
                if turn.offset > duration:
                    diags.append(
                        Diagnostic(
                            ERROR,
                            file_id,
                            line_no,
                            f"turn ends at {format_seconds(turn.offset)} s, after the recording "
                            f"end {format_seconds(duration)} s",
                            source,
                        )
                    )
        if regions is not None:
            if file_id not in regions:
                diags.append(Diagnostic(WARNING, file_id, None, "no UEM scoring regions for this recording"))
            else:
                region_tl = regions.timeline(file_id)
                for turn, line_no, source in items:
                    if overlap_duration(normalize([turn.interval]), region_tl) == 0:
                        diags.append(
                            Diagnostic(WARNING, file_id, line_no, "turn lies entirely outside the scoring regions", source)
                        )
        by_speaker: dict[str, list] = defaultdict(list)
        for item in items:
            by_speaker[item[0].speaker].append(item)
        for speaker in sorted(by_speaker):
            reach = None
            for turn, line_no, source in sorted(by_speaker[speaker], key=lambda it: (it[0].onset, it[1])):
                if reach is not None and turn.onset < reach:
                    diags.append(
                        Diagnostic(
                            WARNING,
                            file_id,
                            line_no,
                            f"turn overlaps an earlier turn of speaker {speaker!r} (merged when scoring)",
                            source,
                        )
                    )
                reach = turn.offset if reach is None else max(reach, turn.offset)

    diags.sort(key=lambda d: (d.file_id, d.line if d.line is not None else -1, d.severity, d.source, d.message))
    return ValidationReport(diags)
