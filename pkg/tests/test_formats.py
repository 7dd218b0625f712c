import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diarscore.errors import (
    BadLabel,
    BadNumber,
    BadTag,
    FieldCount,
    InvariantViolation,
    OverlappingRegions,
    OverlapViolation,
)
from diarscore.formats import (
    FileRegions,
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
from diarscore.timeline import Interval, to_ticks

RTTM_LINES = [
    "SPEAKER CMU_20020319-1400_d01_NONE 1 130.430000 2.350 <NA> <NA> juliet <NA> <NA>",
    "SPEAKER CMU_20020319-1400_d01_NONE 1 157.610000 3.060 <NA> <NA> tbc <NA> <NA>",
    "SPEAKER CMU_20020319-1400_d01_NONE 1 130.490000 0.450 <NA> <NA> chek <NA> <NA>",
]
UEM_LINES = [
    "CMU_20020319-1400_d01_NONE 1 125.000000 727.090000",
    "CMU_20020320-1500_d01_NONE 1 111.700000 615.330000",
    "ICSI_20010208-1430_d05_NONE 1 97.440000 697.290000",
]
HTK_LINES = ["0.10 1.41 speech", "1.98 3.44 speech", "5.0 7.52 speech"]

s = to_ticks


# ---------------------------------------------------------------- RTTM


def test_rttm_example_values():
    turns = parse_rttm("\n".join(RTTM_LINES) + "\n")
    assert [(t.file_id, t.onset, t.duration, t.speaker) for t in turns] == [
        ("CMU_20020319-1400_d01_NONE", s("130.43"), s("2.35"), "juliet"),
        ("CMU_20020319-1400_d01_NONE", s("157.61"), s("3.06"), "tbc"),
        ("CMU_20020319-1400_d01_NONE", s("130.49"), s("0.45"), "chek"),
    ]
    t = turns[0]
    assert (t.type_tag, t.channel, t.orthography, t.speaker_type, t.confidence, t.lookahead) == (
        "SPEAKER",
        1,
        "<NA>",
        "<NA>",
        "<NA>",
        "<NA>",
    )
    assert t.offset == s("132.78")


def test_rttm_round_trip_examples():
    turns = parse_rttm(RTTM_LINES)
    text = write_rttm(turns)
    assert text.splitlines()[0] == "SPEAKER CMU_20020319-1400_d01_NONE 1 130.4300 2.3500 <NA> <NA> juliet <NA> <NA>"
    assert parse_rttm(text) == turns


def test_rttm_field_count():
    with pytest.raises(FieldCount) as exc:
        parse_rttm("SPEAKER f1 1 0.0 1.0 <NA> <NA> a <NA>")
    assert exc.value.line == 1


def test_rttm_error_locality():
    lines = [RTTM_LINES[0]] * 5
    lines[3] = "SPEAKER f1 1 zero 1.0 <NA> <NA> a <NA> <NA>"
    scan = scan_rttm(lines)
    assert [(e.line, e.field, type(e)) for e in scan.errors] == [(4, "onset", BadNumber)]
    assert len(scan.turns) == 4
    assert scan.line_numbers == [1, 2, 3, 5]


@pytest.mark.parametrize(
    "line, field",
    [
        ("SPEAKR f1 1 0.0 1.0 <NA> <NA> a <NA> <NA>", "type"),
        ("SPEAKER f1 2 0.0 1.0 <NA> <NA> a <NA> <NA>", "channel"),
        ("SPEAKER f1 1 0.0 1.0 <NA> <NA> a 0.9 <NA>", "confidence"),
        ("SPEAKER f1 1 0.0 1.0 hello <NA> a <NA> <NA>", "orthography"),
    ],
)
def test_rttm_strict_vs_lenient(line, field):
    with pytest.raises(BadTag) as exc:
        parse_rttm(line)
    assert exc.value.field == field
    scan = scan_rttm(line, strict=False)
    assert scan.ok and len(scan.turns) == 1
    assert [w.field for w in scan.warnings] == [field]


@pytest.mark.parametrize(
    "line, field",
    [
        ("SPEAKER f1 x 0.0 1.0 <NA> <NA> a <NA> <NA>", "channel"),
        ("SPEAKER f1 0 0.0 1.0 <NA> <NA> a <NA> <NA>", "channel"),
        ("SPEAKER f1 1 -1.0 1.0 <NA> <NA> a <NA> <NA>", "onset"),
        ("SPEAKER f1 1 0.0 nan <NA> <NA> a <NA> <NA>", "duration"),
        ("SPEAKER f1 1 0.0 0.000 <NA> <NA> a <NA> <NA>", "duration"),
    ],
)
def test_rttm_bad_numbers(line, field):
    with pytest.raises(BadNumber) as exc:
        parse_rttm(line)
    assert exc.value.field == field and exc.value.line == 1


def test_rttm_zero_duration_dropped_when_lenient():
    scan = scan_rttm("SPEAKER f1 1 0.0 0.0 <NA> <NA> a <NA> <NA>", strict=False)
    assert scan.ok and scan.turns == [] and len(scan.warnings) == 1


def test_rttm_whitespace_and_comments():
    text = ";; comment line\n\n  SPEAKER\tf1  1 0.5\t1.25 <NA> <NA> a <NA> <NA>   \n"
    (turn,) = parse_rttm(text)
    assert (turn.file_id, turn.onset, turn.duration) == ("f1", s("0.5"), s("1.25"))


def test_write_rttm_empty_and_invalid():
    assert write_rttm([]) == ""
    with pytest.raises(InvariantViolation):
        write_rttm([Turn("f1", 0, 0, "a")])
    with pytest.raises(InvariantViolation):
        write_rttm([Turn("f 1", 0, 10, "a")])


tokens = st.text(alphabet="abcdefghijklmnopqrstuvwxyzABC0123456789_-.", min_size=1, max_size=12)
turn_strategy = st.builds(
    Turn,
    file_id=tokens,
    onset=st.integers(0, 10**9),
    duration=st.integers(1, 10**8),
    speaker=tokens,
)


@settings(max_examples=200, deadline=None)
@given(st.lists(turn_strategy, max_size=20))
def test_rttm_round_trip_property(turns):
    assert parse_rttm(write_rttm(turns)) == turns


# ---------------------------------------------------------------- UEM


def test_uem_example_values():
    regions = parse_uem("\n".join(UEM_LINES))
    assert regions["CMU_20020319-1400_d01_NONE"] == FileRegions(1, (Interval(s("125.0"), s("727.09")),))
    assert regions["ICSI_20010208-1430_d05_NONE"].regions == (Interval(s("97.44"), s("697.29")),)
    assert regions["CMU_20020320-1500_d01_NONE"].regions == (Interval(s("111.7"), s("615.33")),)


def test_uem_round_trip_examples():
    regions = parse_uem(UEM_LINES)
    text = write_uem(regions)
    assert text.splitlines()[0] == "CMU_20020319-1400_d01_NONE 1 125.0000 727.0900"
    assert parse_uem(text) == regions


def test_uem_hole_serialization_order():
    regions = ScoringRegions.from_seconds({"f": [(210, 300), (0, 90)]})
    assert write_uem(regions) == "f 1 0.0000 90.0000\nf 1 210.0000 300.0000\n"
    assert write_uem(ScoringRegions()) == ""


def test_uem_overlap_rejected():
    with pytest.raises(OverlappingRegions) as exc:
        parse_uem("f 1 0 100\nf 1 50 150\n")
    assert exc.value.line == 2


def test_uem_touching_regions_kept_separate():
    regions = parse_uem("f 1 0 100\nf 1 100 150\n")
    assert len(regions["f"].regions) == 2
    assert regions.timeline("f").to_seconds() == [(0.0, 150.0)]


@pytest.mark.parametrize(
    "text, exc_type",
    [
        ("f 1 0", FieldCount),
        ("f 1 0 1 2", FieldCount),
        ("f 1 a 10", BadNumber),
        ("f 0 0 10", BadNumber),
        ("f 1 10 10", BadNumber),
        ("f 1 0 10\nf 2 20 30", BadTag),
    ],
)
def test_uem_malformed(text, exc_type):
    with pytest.raises(exc_type):
        parse_uem(text)


def test_uem_accepts_other_channels():
    assert parse_uem("f 2 0 10")["f"].channel == 2


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(tokens, st.lists(st.integers(0, 10**6), min_size=2, max_size=10, unique=True), max_size=5))
def test_uem_round_trip_property(layout):
    files = {}
    for file_id, points in layout.items():
        pts = sorted(points)
        ivs = tuple(Interval(a, b) for a, b in zip(pts[::2], pts[1::2]))
        if ivs:
            files[file_id] = FileRegions(1, ivs)
    regions = ScoringRegions(files)
    assert parse_uem(write_uem(regions)) == regions


# ---------------------------------------------------------------- HTK labels


def test_htk_example_values():
    segs = parse_htk_lab(HTK_LINES)
    assert segs == [
        SadSegment(s("0.10"), s("1.41")),
        SadSegment(s("1.98"), s("3.44")),
        SadSegment(s("5.0"), s("7.52")),
    ]
    assert all(seg.label == "speech" for seg in segs)


def test_htk_round_trip_examples():
    segs = parse_htk_lab(HTK_LINES)
    text = write_htk_lab(segs)
    assert text == "0.1000 1.4100 speech\n1.9800 3.4400 speech\n5.0000 7.5200 speech\n"
    assert parse_htk_lab(text) == segs


@pytest.mark.parametrize(
    "text, exc_type",
    [
        ("0.0 1.0 music", BadLabel),
        ("0.0 1.0", FieldCount),
        ("0.0 x speech", BadNumber),
        ("0.0 2.0 speech\n1.0 3.0 speech", OverlapViolation),
    ],
)
def test_htk_malformed(text, exc_type):
    with pytest.raises(exc_type):
        parse_htk_lab(text)


def test_write_htk_sorts_and_validates():
    assert write_htk_lab([SadSegment(50_000, 60_000), SadSegment(0, 10_000)]) == (
        "0.0000 1.0000 speech\n5.0000 6.0000 speech\n"
    )
    assert write_htk_lab([]) == ""
    with pytest.raises(InvariantViolation):
        write_htk_lab([SadSegment(0, 20_000), SadSegment(10_000, 30_000)])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 10**7), max_size=20, unique=True))
def test_htk_round_trip_property(points):
    pts = sorted(points)
    segs = [SadSegment(a, b) for a, b in zip(pts[::2], pts[1::2])]
    assert parse_htk_lab(write_htk_lab(segs)) == segs
