import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from diarscore.cli import EXIT_INVALID, EXIT_IO, EXIT_OK, EXIT_SCORING, main

DATA = Path(__file__).parent / "data"

# rec1: A=[0,10) B=[5,10) vs one system speaker on [0,10): MISS 5 of 15, JER (0+100)/2.
# rec2: UEM hole [15,16); C=[0,10) D=[10,20) vs x=[0,8) y=[10,20) z=[20,22):
#   MISS 2, FA 2 of TOTAL 19 -> 21.05; JER (20+0)/2.
# OVERALL: (2+7)/34 -> 26.47; JER mean(0, 100, 20, 0) = 30.
EXPECTED_TABLE = (
    "File       DER    JER    FA  MISS  ERROR  TOTAL  NREF  NSYS\n"
    "-------  -----  -----  ----  ----  -----  -----  ----  ----\n"
    "rec1     33.33  50.00  0.00  5.00   0.00  15.00     2     1\n"
    "rec2     21.05  10.00  2.00  2.00   0.00  19.00     2     3\n"
    "OVERALL  26.47  30.00  2.00  7.00   0.00  34.00     4     4\n"
)


def d(name):
    return str(DATA / name)


def score_args(*extra):
    return ["score", "-u", d("all.uem"), "-r", d("ref1.rttm"), d("ref2.rttm"), "-s", d("sys1.rttm"), d("sys2.rttm"), *extra]


def test_score_table(capsys):
    assert main(score_args()) == EXIT_OK
    out = capsys.readouterr().out
    assert out == EXPECTED_TABLE


def test_score_pairs_by_file_id_not_order(capsys):
    args = ["score", "-u", d("all.uem"), "-r", d("ref2.rttm"), d("ref1.rttm"), "-s", d("sys1.rttm"), d("sys2.rttm")]
    assert main(args) == EXIT_OK
    assert capsys.readouterr().out == EXPECTED_TABLE


def test_score_is_idempotent(capsys):
    main(score_args("--format", "json"))
    first = capsys.readouterr().out
    main(score_args("--format", "json"))
    assert capsys.readouterr().out == first


def test_score_json_suppresses_table(capsys):
    assert main(score_args("--format", "json")) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert [f["file_id"] for f in doc["files"]] == ["rec1", "rec2"]
    assert doc["overall"]["der"] == pytest.approx(100 * 9 / 34)
    assert doc["metadata"]["collar"] == 0.0


def test_score_csv(capsys):
    assert main(score_args("--format", "csv")) == EXIT_OK
    assert len(capsys.readouterr().out.splitlines()) == 4


def test_score_core_row(capsys):
    assert main(score_args("--manifest", d("manifest.txt"))) == EXIT_OK
    rows = [line.split()[0] for line in capsys.readouterr().out.splitlines()[2:]]
    assert rows == ["rec1", "rec2", "CORE-OVERALL", "OVERALL"]


def test_score_missing_system_file(capsys):
    args = ["score", "-u", d("all.uem"), "-r", d("ref1.rttm"), d("ref2.rttm"), "-s", d("sys1.rttm")]
    assert main(args) == EXIT_SCORING
    captured = capsys.readouterr()
    assert captured.out == "" and "MissingFile" in captured.err and "rec2" in captured.err


def test_score_missing_uem_entry(tmp_path, capsys):
    uem = tmp_path / "one.uem"
    uem.write_text("rec1 1 0 20\n")
    args = ["score", "-u", str(uem), "-r", d("ref1.rttm"), d("ref2.rttm"), "-s", d("sys1.rttm"), d("sys2.rttm")]
    assert main(args) == EXIT_SCORING
    assert "rec2" in capsys.readouterr().err


def test_score_parse_failure(tmp_path, capsys):
    bad = tmp_path / "bad.rttm"
    bad.write_text("SPEAKER rec1 1 0.0 1.0 <NA> <NA> a <NA>\n")
    assert main(["score", "-r", str(bad), "-s", d("sys1.rttm")]) == EXIT_IO
    err = capsys.readouterr().err
    assert "bad.rttm" in err and "line 1" in err


def test_score_missing_path(capsys):
    assert main(["score", "-r", "/nonexistent.rttm", "-s", d("sys1.rttm")]) == EXIT_IO


def test_score_without_uem_scores_whole_files(capsys):
    assert main(["score", "-r", d("ref1.rttm"), "-s", d("sys1.rttm")]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[2].split()[1] == "33.33"


def test_score_strict_mode_rules(capsys):
    assert main(["score", "--strict", "-r", d("ref1.rttm"), "-s", d("sys1.rttm")]) == EXIT_SCORING
    assert main(score_args("--strict", "--collar", "0.25")) == EXIT_SCORING
    assert main(score_args("--strict")) == EXIT_OK


def test_score_collar_warns(capsys):
    assert main(score_args("--collar", "0.25")) == EXIT_OK
    assert "collar" in capsys.readouterr().err


def test_score_lenient(tmp_path, capsys):
    odd = tmp_path / "odd.rttm"
    odd.write_text("SPEAKER rec1 1 0.000 10.000 <NA> <NA> spk01 0.87 <NA>\n")
    assert main(["score", "-r", d("ref1.rttm"), "-s", str(odd)]) == EXIT_IO
    assert main(["score", "--lenient", "-r", d("ref1.rttm"), "-s", str(odd)]) == EXIT_OK
    assert "confidence" in capsys.readouterr().err


def test_validate_valid(capsys):
    args = ["validate", "--manifest", d("manifest.txt"), "-u", d("all.uem"), "-s", d("sys1.rttm"), d("sys2.rttm")]
    assert main(args) == EXIT_OK
    assert capsys.readouterr().out.startswith("VALID\n")


def test_validate_missing_file(capsys):
    assert main(["validate", "--manifest", d("manifest.txt"), "-s", d("sys1.rttm")]) == EXIT_INVALID
    out = capsys.readouterr().out
    assert out.startswith("INVALID\n") and "rec2" in out


def test_validate_malformed_line(tmp_path, capsys):
    bad = tmp_path / "sys2.rttm"
    bad.write_text((DATA / "sys2.rttm").read_text() + "SPEAKER rec2 1 0 1 <NA> <NA> q <NA>\n")
    assert main(["validate", "--manifest", d("manifest.txt"), "-s", d("sys1.rttm"), str(bad)]) == EXIT_INVALID
    assert f"{bad}:4" in capsys.readouterr().out


def test_validate_io_failure(capsys):
    assert main(["validate", "--manifest", "/nonexistent", "-s", d("sys1.rttm")]) == EXIT_IO


def test_derive_sad(tmp_path, capsys):
    rttm = tmp_path / "ref.rttm"
    rttm.write_text(
        "SPEAKER f 1 0.0 2.0 <NA> <NA> A <NA> <NA>\n"
        "SPEAKER f 1 1.0 2.0 <NA> <NA> B <NA> <NA>\n"
        "SPEAKER g 1 0.0 1.0 <NA> <NA> A <NA> <NA>\n"
        "SPEAKER g 1 1.15 0.85 <NA> <NA> B <NA> <NA>\n"
    )
    out = tmp_path / "sad"
    assert main(["derive-sad", "-r", str(rttm), "-o", str(out)]) == EXIT_OK
    assert (out / "f.lab").read_text() == "0.0000 3.0000 speech\n"
    assert (out / "g.lab").read_text() == "0.0000 1.0000 speech\n1.1500 2.0000 speech\n"
    assert main(["derive-sad", "-r", str(rttm), "-o", str(out), "--max-gap", "0.2"]) == EXIT_OK
    assert (out / "g.lab").read_text() == "0.0000 2.0000 speech\n"


def test_derive_sad_empty(tmp_path, capsys):
    rttm = tmp_path / "quiet.rttm"
    rttm.write_text("")
    assert main(["derive-sad", "-r", str(rttm), "-o", str(tmp_path)]) == EXIT_OK
    assert (tmp_path / "quiet.lab").read_text() == ""
    assert "warning" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "diarscore", *score_args()], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout == EXPECTED_TABLE


def test_backends_agree_end_to_end():
    outputs = []
    for pure in ("0", "1"):
        env = dict(os.environ, DIARSCORE_PURE_PYTHON=pure)
        proc = subprocess.run(
            [sys.executable, "-m", "diarscore", *score_args("--format", "json")],
            capture_output=True, text=True, check=True, env=env,
        )
        outputs.append(proc.stdout)
    assert outputs[0] == outputs[1]
