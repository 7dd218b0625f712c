"""Command-line entry point: ``diarscore score|validate|derive-sad``.

Exit codes:
    0  success (for ``validate``: submission is valid)
    1  I/O or parse failure
    2  scoring failure, or a bad invocation
    3  ``validate`` only: submission is invalid
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .errors import DiarScoreError, FormatError, ScoringError
from .formats import parse_uem, scan_rttm, write_htk_lab
from .reporting import emit_machine, render_table
from .scoring import derive_sad, score_corpus
from .validation import load_manifest, validate_submission

EXIT_OK = 0
EXIT_IO = 1
EXIT_SCORING = 2
EXIT_INVALID = 3


def _warn(msg: str) -> None:
    print(f"diarscore: warning: {msg}", file=sys.stderr)


def _error(msg: str) -> None:
    print(f"diarscore: error: {msg}", file=sys.stderr)


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_turns(paths: list[str], strict: bool) -> list:
    turns = []
    for path in paths:
        scan = scan_rttm(_read_text(path), strict=strict)
        for w in scan.warnings:
            _warn(f"{path}: {w}")
        if scan.errors:
            exc = scan.errors[0]
            raise FormatError(exc.line, f"{path}: {exc}", exc.field)
        turns.extend(scan.turns)
    return turns


def run_score(args: argparse.Namespace) -> int:
    if args.strict and args.uem is None:
        _error("--strict requires a UEM file (-u)")
        return EXIT_SCORING
    if args.collar != 0.0:
        if args.strict:
            _error("--collar is not allowed with --strict: challenge scoring uses no collar")
            return EXIT_SCORING
        _warn(f"scoring with a {args.collar} s collar; results are not comparable to challenge scoring")
    try:
        regions = parse_uem(_read_text(args.uem)) if args.uem else None
        ref = _load_turns(args.ref, strict=not args.lenient)
        sys_turns = _load_turns(args.sys, strict=not args.lenient)
        core = load_manifest(_read_text(args.manifest)).core_ids if args.manifest else None
    except (OSError, FormatError) as exc:
        _error(str(exc))
        return EXIT_IO
    try:
        report = score_corpus(
            ref,
            sys_turns,
            regions,
            core=core,
            collar=args.collar,
            metadata={"uem": args.uem, "ref": list(args.ref), "sys": list(args.sys), "version": __version__},
        )
    except ScoringError as exc:
        _error(str(exc))
        return EXIT_SCORING
    for f in report.files:
        for note in f.notes:
            _warn(f"{f.file_id}: {note}")
    if args.format == "table":
        sys.stdout.write(render_table(report))
    else:
        sys.stdout.write(emit_machine(report, args.format))
    return EXIT_OK


def run_validate(args: argparse.Namespace) -> int:
    try:
        manifest = load_manifest(_read_text(args.manifest))
        regions = parse_uem(_read_text(args.uem)) if args.uem else None
        texts = {path: _read_text(path) for path in args.sys}
    except (OSError, FormatError) as exc:
        _error(str(exc))
        return EXIT_IO
    report = validate_submission(texts, manifest, regions)
    sys.stdout.write(report.render())
    return EXIT_OK if report.valid else EXIT_INVALID


def run_derive_sad(args: argparse.Namespace) -> int:
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        by_file: dict[str, list] = {}
        for path in args.ref:
            turns = _load_turns([path], strict=not args.lenient)
            if not turns:
                _warn(f"{path}: no turns; writing an empty label file")
                by_file.setdefault(Path(path).stem, [])
            for t in turns:
                by_file.setdefault(t.file_id, []).append(t)
        for file_id in sorted(by_file):
            segments = derive_sad(by_file[file_id], max_gap=args.max_gap)
            (out_dir / f"{file_id}.lab").write_text(write_htk_lab(segments), encoding="utf-8")
    except (OSError, FormatError) as exc:
        _error(str(exc))
        return EXIT_IO
    except DiarScoreError as exc:
        _error(str(exc))
        return EXIT_SCORING
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diarscore", description="Speaker diarization scoring (DER/JER).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="score system RTTMs against reference RTTMs")
    p.add_argument("-u", "--uem", help="UEM file with scoring regions (default: score whole files)")
    p.add_argument("-r", "--ref", nargs="+", required=True, metavar="RTTM", help="reference RTTM files")
    p.add_argument("-s", "--sys", nargs="+", required=True, metavar="RTTM", help="system RTTM files")
    p.add_argument("--manifest", help="manifest marking core-set files; adds a CORE-OVERALL row")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--strict", action="store_true", help="challenge mode: UEM required, no collar")
    p.add_argument("--lenient", action="store_true", help="downgrade RTTM tag/channel deviations to warnings")
    p.add_argument(
        "--collar", type=float, default=0.0, help="(expert) no-score zone in seconds around reference boundaries"
    )
    p.set_defaults(func=run_score)

    p = sub.add_parser("validate", help="check a submission for completeness and well-formedness")
    p.add_argument("--manifest", required=True, help="manifest of expected recordings")
    p.add_argument("-u", "--uem", help="UEM file; flags turns outside the scoring regions")
    p.add_argument("-s", "--sys", nargs="+", required=True, metavar="RTTM", help="submitted RTTM files")
    p.set_defaults(func=run_validate)

    p = sub.add_parser("derive-sad", help="write reference SAD label files from reference RTTMs")
    p.add_argument("-r", "--ref", nargs="+", required=True, metavar="RTTM")
    p.add_argument("-o", "--out-dir", required=True, help="directory for <file_id>.lab outputs")
    p.add_argument("--max-gap", type=float, default=0.0, help="bridge pauses up to this many seconds")
    p.add_argument("--lenient", action="store_true")
    p.set_defaults(func=run_derive_sad)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "strict", False) and getattr(args, "lenient", False):
        _error("--strict and --lenient are mutually exclusive")
        return EXIT_SCORING
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
