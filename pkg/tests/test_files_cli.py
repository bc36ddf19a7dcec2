"""Input parsing, the CLI contract (exit codes 0/1/2/3), JSON determinism
against checked-in goldens, and machine-readable round-trips."""

import json
from pathlib import Path

import pytest

import polyk.cellular as cellular
from polyk.cli import main
from polyk.errors import InputError
from polyk.files import load_polytope, parse_polytope_text
from polyk.ktheory import AbelianGroup

REPO = Path(__file__).resolve().parent.parent
POLYTOPES = REPO / "polytopes"
GOLDEN = Path(__file__).resolve().parent / "data" / "golden"


# --- parsing ---

def test_parse_valid_with_rationals():
    pf = parse_polytope_text(
        '{"name": "t", "dim": 2, "vertices": [[0, 0], ["1/2", 1], [1, "0"]]}')
    assert pf.dim == 2 and len(pf.vertices) == 3
    assert pf.vertices[1][0] == 0.5  # Fraction(1, 2) compares equal


def test_parse_rejects_zero_denominator():
    with pytest.raises(InputError, match="zero denominator"):
        parse_polytope_text('{"name": "t", "dim": 1, "vertices": [["1/0"], [1]]}')


def test_parse_rejects_floats():
    with pytest.raises(InputError, match="floating-point"):
        parse_polytope_text('{"name": "t", "dim": 1, "vertices": [[0.5], [1]]}')


def test_parse_rejects_malformed_rational():
    with pytest.raises(InputError, match="malformed rational"):
        parse_polytope_text('{"name": "t", "dim": 1, "vertices": [["1//2"], [1]]}')


def test_parse_rejects_missing_fields():
    with pytest.raises(InputError, match="missing field"):
        parse_polytope_text('{"name": "t", "vertices": [[0], [1]]}')


def test_parse_rejects_wrong_coordinate_count():
    with pytest.raises(InputError, match="vertex 1 has 1 coordinates"):
        parse_polytope_text('{"name": "t", "dim": 2, "vertices": [[0, 0], [1]]}')


def test_parse_reports_location():
    with pytest.raises(InputError, match="vertex 1, coordinate 0"):
        parse_polytope_text('{"name": "t", "dim": 1, "vertices": [[0], ["2/0"]]}')


def test_parse_invalid_json_mentions_line():
    with pytest.raises(InputError, match="line"):
        parse_polytope_text('{"name": "t",\n  broken')


def test_load_polytope(tmp_path):
    f = tmp_path / "seg.json"
    f.write_text('{"name": "seg", "dim": 1, "vertices": [[0], ["3/2"]]}', encoding="utf-8")
    p = load_polytope(f)
    assert p.name == "seg" and p.nvertices == 2


# --- CLI exit codes ---

def test_cli_validate_ok(capsys):
    assert main(["validate", str(POLYTOPES / "triangle.json")]) == 0
    assert capsys.readouterr().out.strip() == "valid"


def test_cli_validate_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "b", "dim": 2, '
                   '"vertices": [[0,0],[1,0],[0,1],["1/2","1/4"]]}', encoding="utf-8")
    assert main(["validate", str(bad)]) == 1
    assert "point 3 not extreme" in capsys.readouterr().err


def test_cli_validate_missing_file(capsys):
    assert main(["validate", "/nonexistent/poly.json"]) == 1
    assert "cannot read" in capsys.readouterr().err


def test_cli_report_injected_internal_error(monkeypatch, capsys):
    real = cellular.incidence_sign
    state = {"flipped": False}

    def sabotage(t, ray, e, f):
        s = real(t, ray, e, f)
        if f.dim == 1 and not state["flipped"]:
            state["flipped"] = True
            return -s
        return s

    monkeypatch.setattr(cellular, "incidence_sign", sabotage)
    rc = main(["report", str(POLYTOPES / "square.json")])
    assert rc == 2
    assert "internal error" in capsys.readouterr().err


def test_cli_compare_isomorphic(capsys):
    rc = main(["compare", str(POLYTOPES / "square.json"), str(POLYTOPES / "quadrilateral.json")])
    assert rc == 0
    out = capsys.readouterr().out
    assert "isomorphic: 10 faces matched" in out


def test_cli_compare_not_isomorphic(capsys):
    rc = main(["compare", str(POLYTOPES / "cube.json"), str(POLYTOPES / "octahedron.json")])
    assert rc == 3
    assert "f-vector mismatch" in capsys.readouterr().out


def test_cli_compare_self_identity(capsys):
    rc = main(["compare", str(POLYTOPES / "cube.json"), str(POLYTOPES / "cube.json")])
    assert rc == 0


# --- report content ---

def test_cli_report_cube_ktheory(capsys):
    assert main(["report", str(POLYTOPES / "cube.json"), "--ktheory"]) == 0
    out = capsys.readouterr().out
    assert "K_0(A_Omega) = 0" in out
    assert "K_1(A_Omega) = 0" in out
    assert "K_1(A_Omega/K) = Z" in out
    assert "K_0(A_Omega/K) = 0" in out


def test_cli_report_segment_boundary(capsys):
    assert main(["report", str(POLYTOPES / "segment.json"), "--boundary"]) == 0
    out = capsys.readouterr().out
    assert "D_0" in out and "D_1" in out
    assert "{0,1}" in out  # row labels by vertex sets


def test_cli_report_point_full(capsys):
    assert main(["report", str(POLYTOPES / "point.json")]) == 0
    out = capsys.readouterr().out
    assert "f-vector: [1, 1]" in out


# --- JSON determinism and round-trip ---

GOLDEN_CASES = ["segment", "triangle", "square", "cube"]
REPORT_FLAGS = ["--faces", "--boundary", "--homology", "--ktheory", "--json"]


def run_json_report(name, capsys):
    assert main(["report", str(POLYTOPES / f"{name}.json")] + REPORT_FLAGS) == 0
    return capsys.readouterr().out


@pytest.mark.parametrize("name", GOLDEN_CASES)
def test_json_reports_byte_identical_across_runs(name, capsys):
    first = run_json_report(name, capsys)
    second = run_json_report(name, capsys)
    assert first.encode("utf-8") == second.encode("utf-8")


@pytest.mark.parametrize("name", GOLDEN_CASES)
def test_json_reports_match_goldens(name, capsys):
    out = run_json_report(name, capsys)
    golden = (GOLDEN / f"{name}.json").read_text(encoding="utf-8")
    assert out == golden


def test_json_report_roundtrips_group_descriptors(capsys, pipelines):
    out = run_json_report("cube", capsys)
    doc = json.loads(out)
    kt = doc["ktheory"]
    rep = pipelines["cube"].report
    assert AbelianGroup.from_json(kt["K_A_Omega"]["K0"]) == rep.k_algebra[0]
    assert AbelianGroup.from_json(kt["K_A_Omega"]["K1"]) == rep.k_algebra[1]
    assert AbelianGroup.from_json(kt["K_A_Omega_mod_K"]["K0"]) == rep.k_quotient[0]
    assert AbelianGroup.from_json(kt["K_A_Omega_mod_K"]["K1"]) == rep.k_quotient[1]
    hom = doc["homology"]
    for entry in hom["augmented"]:
        free, tors = pipelines["cube"].augmented_homology.group(entry["degree"])
        assert entry["free_rank"] == free and tuple(entry["torsion"]) == tors
    assert doc["f_vector"] == list(pipelines["cube"].lattice.f_vector)


def test_json_vertices_echo_exactly(capsys):
    assert main(["report", str(POLYTOPES / "pentagon.json"), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["input"]["vertices"][2] == ["3", "3/2"]
    assert doc["input"]["vertices"][4] == ["-1/2", "3/2"]


# --- corpus command ---

def test_cli_corpus_human(capsys):
    rc = main(["corpus", str(POLYTOPES)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "cube.json: ok" in out


def test_cli_corpus_json(tmp_path, capsys):
    (tmp_path / "a.json").write_text(
        '{"name": "seg", "dim": 1, "vertices": [[0], [1]]}', encoding="utf-8")
    (tmp_path / "b.json").write_text(
        '{"name": "bad", "dim": 2, "vertices": [[0,0],[1,1],[2,2]]}', encoding="utf-8")
    rc = main(["corpus", str(tmp_path), "--json"])
    assert rc == 1  # worst per-file status: input error
    doc = json.loads(capsys.readouterr().out)
    assert doc["files"]["a.json"]["status"] == "ok"
    assert doc["files"]["b.json"]["status"] == "input-error"


def test_cli_corpus_empty_dir(tmp_path, capsys):
    assert main(["corpus", str(tmp_path)]) == 1
    assert "no *.json" in capsys.readouterr().err
