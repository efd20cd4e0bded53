import json

import pytest

from cli.corpus import corpus_names, hirzebruch_fan, resolve_fan
from cli.fan_document import FanDocument
from cli.reports import QuotientRecord, Report, ReportWriter, decode_big_ints, encode_big_ints, parse_quotient_report
from cli.run_toriq import ToriqPipeline, main, parse_degree
from config.errors import ErrorCode, ToriqError
from config.settings import CORPUS_DIR, EXIT_CERTIFICATE, EXIT_OK, EXIT_PARSE, EXIT_QUOTIENT, EXIT_VALIDATION
from cox_quotient import codim_check, irrelevant_ideal
from support_fn import PicClass


@pytest.fixture
def overlap_file(tmp_path):
    path = tmp_path / "overlap.json"
    path.write_text(json.dumps({"name": "overlap", "rays": [[1, 0], [0, 1], [1, 1], [1, -1]], "cones": [[0, 1], [2, 3]]}))
    return path


def _run(tmp_path, *args):
    out = tmp_path / "report.json"
    code = main([*args, "--out", str(out)])
    return code, json.loads(out.read_text(encoding="utf-8"))


def test_corpus_is_bundled():
    """Every named fan ships with the package."""
    names = corpus_names()
    assert {"p1", "p2", "p1xp1", "hirzebruch_2", "affine_square_cone", "cube_fan", "perturbed_cube", "blowup_p2"} <= set(names)
    assert (CORPUS_DIR / "p2.json").is_file()


def test_hirzebruch_generator_matches_corpus():
    """The generated F_2 matches the shipped file."""
    generated = hirzebruch_fan(2)
    shipped = resolve_fan("hirzebruch_2")
    assert generated.rays == shipped.rays
    assert generated.cones == shipped.cones
    assert resolve_fan("hirzebruch_3").rays[2] == [-1, 3]


def test_fan_document_normalizes_rays(caplog):
    """Non-primitive rays are divided by their gcd with a warning."""
    document = FanDocument.from_dict({"rays": [[2, 0], [0, 1]], "cones": [[0, 1]]})
    assert document.rays == [[1, 0], [0, 1]]
    assert document.lattice_rank == 2
    assert "not primitive" in caplog.text


@pytest.mark.parametrize(
    "payload",
    [[1, 2], {"rays": [[1, 0]]}, {"rays": [["a"]], "cones": []}, {"rays": [[1, 0], [1]], "cones": []}],
)
def test_fan_document_parse_errors(payload):
    """Malformed payloads raise a parse error."""
    with pytest.raises(ToriqError) as excinfo:
        FanDocument.from_dict(payload)
    assert excinfo.value.code == ErrorCode.PARSE_ERROR


def test_parse_degree():
    """Degrees are comma-separated integers."""
    assert parse_degree("2") == PicClass((2,))
    assert parse_degree("1,1") == PicClass((1, 1))
    with pytest.raises(ToriqError, match="PARSE_ERROR"):
        parse_degree("x")


def test_validate_p2(tmp_path):
    """P2 validates cleanly."""
    code, report = _run(tmp_path, "validate", "p2")
    assert code == EXIT_OK
    assert report["sections"]["validation"]["valid"]


def test_validate_malformed_json(tmp_path):
    """Broken JSON exits with the parse code."""
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")

    code, report = _run(tmp_path, "validate", str(broken))

    assert code == EXIT_PARSE
    assert report["error"]["code"] == "PARSE_ERROR"


def test_validate_overlapping_cones(tmp_path, overlap_file):
    """Overlapping cones fail validation."""
    code, report = _run(tmp_path, "validate", str(overlap_file))
    kinds = {v["kind"] for v in report["sections"]["validation"]["violations"]}
    assert code == EXIT_VALIDATION
    assert "BAD_INTERSECTION" in kinds


def test_analyze(tmp_path):
    """Analysis reports ranks and the enough-Cartier table."""
    code, report = _run(tmp_path, "analyze", "p2")
    analysis = report["sections"]["analysis"]
    assert code == EXIT_OK
    assert (analysis["sf_rank"], analysis["pic_rank"]) == (3, 1)
    assert analysis["enough_cartier_passed"]

    code, report = _run(tmp_path, "analyze", "affine_square_cone")
    assert report["sections"]["analysis"]["pic_rank"] == 0
    assert report["sections"]["analysis"]["enough_cartier_passed"]

    code, report = _run(tmp_path, "analyze", "perturbed_cube")
    rows = report["sections"]["analysis"]["enough_cartier"]
    assert code == EXIT_OK
    assert any(not row["passed"] for row in rows)


def test_quotient_of_p2_and_p1xp1(tmp_path):
    """Quotient reports list the l_ρ and the irrelevant ideal."""
    code, report = _run(tmp_path, "quotient", "p2", "--full-irrelevant")
    quotient = report["sections"]["quotient"]
    assert code == EXIT_OK
    assert sorted(e["vector"] for e in quotient["l"]) == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    assert len(quotient["irrelevant"]["radical_generators"]) == 3
    assert quotient["codim"] == 3

    code, report = _run(tmp_path, "quotient", "p1xp1")
    assert report["sections"]["quotient"]["sf_rank"] == 4
    assert len(report["sections"]["quotient"]["irrelevant"]["radical_generators"]) == 4


def test_quotient_of_perturbed_cube_fails(tmp_path):
    """A fan without enough Cartier divisors exits with the quotient code."""
    code, report = _run(tmp_path, "quotient", "perturbed_cube")
    assert code == EXIT_QUOTIENT
    assert report["error"]["code"] == "NOT_ENOUGH_CARTIER"
    assert report["error"]["details"]["failing_cones"]


@pytest.mark.parametrize("fan, degree, expected", [("p2", "2", 6), ("p2", "-1", 0), ("p1xp1", "1,1", 4)])
def test_sections(tmp_path, fan, degree, expected):
    """The sections command counts monomials and checks each chart."""
    code, report = _run(tmp_path, "sections", fan, "--degree", degree)
    assert code == EXIT_OK
    assert report["sections"]["sections"]["count"] == expected
    assert all(chart["passed"] for chart in report["sections"]["charts"])


def test_verify_p2(tmp_path):
    """The verify command passes on P2."""
    code, report = _run(tmp_path, "verify", "p2")
    assert code == EXIT_OK
    assert report["sections"]["verification"]["passed"]


def test_verify_reports_certificate_failures(tmp_path, mocker):
    """A failing suite becomes a certificate error."""
    # 1. Arrange
    suite = mocker.MagicMock(passed=False, failures=[])
    suite.summary.return_value.to_string.return_value = ""
    suite.summary.return_value.to_dict.return_value = []
    mocker.patch("cli.run_toriq.verify_all", return_value=suite)

    # 2. Act
    code, report = _run(tmp_path, "verify", "p1")

    # 3. Assert
    assert code == EXIT_CERTIFICATE
    assert report["error"]["code"] == "CERTIFICATE_FAILURE"


def test_unknown_fan_is_an_io_error(tmp_path):
    """A name that is neither a file nor a corpus fan is an IO error."""
    code, report = _run(tmp_path, "validate", "no_such_fan")
    assert code == EXIT_PARSE
    assert report["error"]["code"] == "IO_ERROR"


def test_reports_are_deterministic(tmp_path):
    """Two runs write byte-identical reports."""
    # 1. Arrange
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"

    # 2. Act
    main(["quotient", "p1xp1", "--out", str(first)])
    main(["quotient", "p1xp1", "--out", str(second)])

    # 3. Assert
    assert first.read_bytes() == second.read_bytes()


def test_quotient_report_round_trip(tmp_path):
    """A saved quotient report parses back to the same record."""
    # 1. Arrange
    pipeline = ToriqPipeline(resolve_fan("p2"), full_irrelevant=True)
    report = pipeline.run("quotient")
    ideal = irrelevant_ideal(pipeline.qp, full=True)
    expected = QuotientRecord.from_presentation(pipeline.qp, ideal, codim_check(pipeline.qp, ideal))

    # 2. Act
    path = ReportWriter(tmp_path).save(report)
    loaded = ReportWriter(tmp_path).load(path)

    # 3. Assert
    assert path == tmp_path / "p2_quotient.json"
    assert parse_quotient_report(loaded["sections"]["quotient"]) == expected


def test_big_integers_are_strings():
    """Integers beyond 2^53 are written as strings."""
    payload = {"x": [2**70, -(2**70), 5], "flag": True}
    encoded = encode_big_ints(payload)
    assert encoded == {"x": [str(2**70), str(-(2**70)), 5], "flag": True}
    assert decode_big_ints(json.loads(json.dumps(encoded))) == payload


def test_writer_failure_is_logged(tmp_path, mocker, caplog):
    """A failed write returns None and logs the failure."""
    # 1. Arrange
    mocker.patch("pathlib.Path.write_text", side_effect=OSError("disk full"))

    # 2. Act / 3. Assert
    assert ReportWriter(tmp_path).save(Report(command="validate", fan_name="p2")) is None
    assert "Failed to save report" in caplog.text


def test_degree_of_the_wrong_length_is_a_parse_error(tmp_path):
    """A Pic class with the wrong number of coordinates exits as a parse error."""
    # 1. Act
    code, report = _run(tmp_path, "sections", "p2", "--degree", "1,1")

    # 2. Assert
    assert code == EXIT_PARSE
    assert report["error"]["code"] == "PARSE_ERROR"
    assert report["error"]["details"]["pic_rank"] == 1
