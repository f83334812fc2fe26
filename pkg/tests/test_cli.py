import json
import subprocess
import sys

import pytest

from movability.cli import main
from movability.catalog import catalog_graph
from movability.graphs import encode_graph6


Q1 = encode_graph6(catalog_graph("Q1"))
C4 = "Cl"


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_nac_enum_four_cycle(capsys):
    code, out, _ = run(["nac", "enum", C4], capsys)
    assert code == 0
    assert len(json.loads(out)) == 6


def test_nac_enum_no_nac_graph(capsys):
    # 7-vertex graph with no NAC-coloring: empty list, still exit 0
    from movability.catalog import graph_without_nac

    code, out, _ = run(["nac", "enum", encode_graph6(graph_without_nac())], capsys)
    assert code == 0
    assert json.loads(out) == []


def test_nac_check_bad_coloring_file(tmp_path, capsys):
    bad = tmp_path / "c.json"
    bad.write_text('{"edges": [[0,1]], "colors": ["red"]}')
    code, _, err = run(["nac", "check", C4, "--coloring", str(bad)], capsys)
    assert code == 2


def test_parse_failure_exit_code(capsys):
    code, _, err = run(["cdc", "~~~"], capsys)
    assert code == 2


def test_cap_exit_code(capsys):
    code, _, err = run(["nac", "enum", C4, "--cap", "2"], capsys)
    assert code == 3


def test_cdc_of_k2(capsys):
    code, out, err = run(["cdc", "A_"], capsys)
    assert code == 0
    assert out.strip() == "A_"
    assert "iterations: 0" in err


def test_cdc_of_unicolor_path_graph(capsys):
    from movability.catalog import graph_with_unicolor_path

    code, out, err = run(["cdc", encode_graph6(graph_with_unicolor_path())], capsys)
    assert code == 0
    from movability.graphs import parse_graph6

    assert parse_graph6(out.strip()).is_complete()


def test_classify_verdicts(capsys):
    from movability.catalog import graph_with_unicolor_path

    code, out, _ = run(["classify", encode_graph6(graph_with_unicolor_path())], capsys)
    assert code == 0
    assert json.loads(out)["verdict"] == "NOT_MOVABLE_CDC_COMPLETE"


def test_classify_writes_certificates(tmp_path, capsys):
    outdir = tmp_path / "cert"
    code, out, _ = run(["classify", Q1, "--out", str(outdir)], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "MOVABLE"
    assert (outdir / "labeling.json").exists()
    assert (outdir / "motion.json").exists()


def test_certificate_reverifies_in_separate_process(tmp_path):
    outdir = tmp_path / "cert"
    subprocess.run(
        [sys.executable, "-m", "movability.cli", "classify", Q1, "--out", str(outdir)],
        check=True,
        capture_output=True,
    )
    result = subprocess.run(
        [sys.executable, "-m", "movability.cli", "motion", "verify", str(outdir / "motion.json")],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    report = json.loads(result.stdout)
    assert report["compatible"] and report["proper"] and not report["trivial"]


def test_construct_s5_and_valuations(tmp_path, capsys):
    outdir = tmp_path / "s5"
    code, out, _ = run(["construct", "s5", "--a", "2", "--out", str(outdir)], capsys)
    assert code == 0
    lab = json.loads((outdir / "labeling.json").read_text())
    by_edge = dict(zip(map(tuple, lab["edges"]), lab["lambda_sq"]))
    assert by_edge[(0, 4)] == "9/25"
    assert by_edge[(3, 4)] == "64/25"
    code, out, _ = run(
        ["motion", "valuations", str(outdir / "motion.json"), "--format", "json"],
        capsys,
    )
    assert code == 0


def test_construct_grid_rejection_exit_code(capsys):
    from movability.catalog import graph_with_unicolor_path

    code, _, err = run(
        [
            "construct",
            "grid",
            encode_graph6(graph_with_unicolor_path()),
            "--out",
            "/tmp/unused-grid",
        ],
        capsys,
    )
    assert code == 5
    assert "share grid cell" in err


def test_construct_dixon_on_triangle_fails(capsys):
    code, _, err = run(["construct", "dixon1", "Bw", "--out", "/tmp/unused-dixon"], capsys)
    assert code == 5


def test_motion_valuations_table_layout(tmp_path, capsys):
    outdir = tmp_path / "q1"
    run(["classify", Q1, "--out", str(outdir)], capsys)
    code, out, _ = run(["motion", "valuations", str(outdir / "motion.json")], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split()[0] == "edge"
    assert len(lines) == 1 + 11  # header plus one row per edge


def test_motion_active_nac_and_refix(tmp_path, capsys):
    outdir = tmp_path / "q1"
    run(["classify", Q1, "--out", str(outdir)], capsys)
    code, out, _ = run(
        ["motion", "active-nac", str(outdir / "motion.json"), "--format", "json"],
        capsys,
    )
    assert code == 0
    assert len(json.loads(out)) == 4
    refixed = tmp_path / "refixed.json"
    # pick an edge of the catalog Q1
    u, v = sorted(catalog_graph("Q1").edges)[1]
    code, out, _ = run(
        [
            "motion",
            "refix",
            str(outdir / "motion.json"),
            "--edge",
            f"{u},{v}",
            "--out",
            str(refixed),
        ],
        capsys,
    )
    assert code == 0
    code, out, _ = run(["motion", "verify", str(refixed)], capsys)
    assert code == 0
    assert json.loads(out)["compatible"]


def test_track_cli(tmp_path, capsys):
    from movability.constructions import deltoid_motion
    from movability.motion import labeling_to_json

    quad = deltoid_motion()
    lab_file = tmp_path / "lab.json"
    lab_file.write_text(labeling_to_json(quad.motion.induced_labeling()))
    start_file = tmp_path / "start.json"
    start_file.write_text(json.dumps(quad.motion.realize_float(1.0)))
    out_file = tmp_path / "path.csv"
    code, out, _ = run(
        [
            "motion",
            "track",
            "--labeling",
            str(lab_file),
            "--start",
            str(start_file),
            "--fixed",
            "0,1",
            "--steps",
            "20",
            "--out",
            str(out_file),
        ],
        capsys,
    )
    assert code == 0
    lines = out_file.read_text().strip().splitlines()
    assert len(lines) == 22
    assert lines[0].startswith("step,")


def test_gen_stream(tmp_path, capsys):
    out_file = tmp_path / "graphs.g6"
    code, _, _ = run(["gen", "--max-n", "5", "--out", str(out_file)], capsys)
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert len(lines) == 1 + 2 + 6 + 21


def test_census_cli_small(tmp_path, capsys):
    stream = tmp_path / "graphs.g6"
    run(["gen", "--max-n", "6", "--out", str(stream)], capsys)
    code, out, err = run(
        ["census", "--graphs", str(stream), "--max-n", "6"], capsys
    )
    # bundled catalog includes 7- and 8-vertex entries the 6-census cannot
    # reach, so the match fails with exit 4
    assert code == 4
    report = json.loads(out)
    assert report["matches_catalog"] is False


def test_census_cli_with_catalog_dir(tmp_path, capsys):
    stream = tmp_path / "graphs.g6"
    run(["gen", "--max-n", "6", "--out", str(stream)], capsys)
    catdir = tmp_path / "cat"
    catdir.mkdir()
    for name in ("K33", "L1"):
        (catdir / f"{name}.g6").write_text(encode_graph6(catalog_graph(name)) + "\n")
    report_file = tmp_path / "report.json"
    code, out, err = run(
        [
            "census",
            "--graphs",
            str(stream),
            "--max-n",
            "6",
            "--catalog",
            str(catdir),
            "--out",
            str(report_file),
        ],
        capsys,
    )
    assert code == 0
    report = json.loads(report_file.read_text())
    assert report["matches_catalog"] is True


def test_output_is_deterministic(capsys):
    first = run(["classify", Q1], capsys)
    second = run(["classify", Q1], capsys)
    assert first == second
    third = run(["nac", "enum", C4], capsys)
    fourth = run(["nac", "enum", C4], capsys)
    assert third == fourth


def test_census_jobs_agree(tmp_path, capsys):
    stream = tmp_path / "graphs.g6"
    run(["gen", "--max-n", "6", "--out", str(stream)], capsys)
    from movability.decide import census

    lines = stream.read_text().splitlines()
    serial = census(lines, max_n=6, catalog=None, jobs=1).to_json()
    parallel = census(lines, max_n=6, catalog=None, jobs=2).to_json()
    assert serial == parallel


def test_missing_file_is_a_parse_error(capsys):
    code, _, err = run(["census", "--graphs", "/nonexistent/file.g6"], capsys)
    assert code == 2


def test_construct_two_nac_writes_embedding(tmp_path, capsys):
    outdir = tmp_path / "two"
    code, out, _ = run(
        ["construct", "two-nac", Q1, "--out", str(outdir)], capsys
    )
    assert code == 0
    emb = json.loads((outdir / "embedding.json").read_text())
    assert len(emb) == 7
    assert all(len(p) == 3 for p in emb.values())


def test_nac_enum_table_format(capsys):
    code, out, _ = run(["nac", "enum", C4, "--format", "table"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("edge")
    assert len(lines) == 5  # header + one row per edge


def test_adjacency_json_input(capsys):
    spec = '{"n": 4, "edges": [[0,1],[1,2],[2,3],[0,3]]}'
    code, out, _ = run(["nac", "enum", spec], capsys)
    assert code == 0
    assert len(json.loads(out)) == 6
