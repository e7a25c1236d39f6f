import json
from pathlib import Path

from dglcalc.cli import main
from dglcalc.modelfile import parse_workspace

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(argv, capsys):
    code, out, err = run(argv + ["--format", "json"], capsys)
    return code, (json.loads(out) if out else None), err


def fixture(name):
    return str(FIXTURES / name)


def test_validate_all_fixtures_green(capsys):
    for path in sorted(FIXTURES.glob("*.dgl")):
        code, out, err = run(["validate", str(path)], capsys)
        assert code == 0, (path.name, err)


def test_evsub_pinch_degree_4(capsys):
    code, out, err = run_json(
        ["evsub", fixture("cp2_to_s4.dgl"), "f", "--top-degree", "4", "--max-degree", "10"],
        capsys,
    )
    assert code == 0
    entry = out["degrees"][0]
    assert entry["topological"] == 4 and entry["internal"] == 3
    assert entry["dimension"] == 0


def test_gvp_pinch_degree_4(capsys):
    code, out, err = run_json(
        ["gvp", fixture("cp2_to_s4.dgl"), "f", "--top-degree", "4", "--max-degree", "10"],
        capsys,
    )
    assert code == 0
    entry = out["degrees"][0]
    assert entry["quotient_dim"] == 1
    assert entry["center_dim"] == 1 and entry["evaluation_dim"] == 0


def test_center_pinch_degree_4(capsys):
    code, out, err = run_json(
        ["center", fixture("cp2_to_s4.dgl"), "f", "--top-degree", "4", "--max-degree", "10"],
        capsys,
    )
    assert code == 0
    entry = out["degrees"][0]
    assert entry["dimension"] == 1
    assert entry["representatives"] == ["u3"]


def test_homology_command(capsys):
    code, out, err = run_json(
        ["homology", fixture("cp2_to_s4.dgl"), "CP2", "--degrees", "2:5", "--max-degree", "10"],
        capsys,
    )
    assert code == 0
    dims = {e["internal"]: e["dimension"] for e in out["degrees"]}
    assert dims == {1: 1, 2: 0, 3: 0, 4: 1}


def test_gottlieb_command_spheres(capsys):
    code, out, err = run_json(
        ["gottlieb", fixture("spheres.dgl"), "S2", "--degrees", "2:4"], capsys
    )
    assert code == 0
    dims = {e["topological"]: e["dimension"] for e in out["degrees"]}
    assert dims == {2: 0, 3: 1, 4: 0}


def test_omega_one_cell(capsys):
    code, out, err = run_json(
        ["omega", fixture("one_cell_attachment.dgl"), "i", "--top-degree", "3"], capsys
    )
    assert code == 0
    assert out["degrees"][0]["omega_dim"] == 1


def test_les_command(capsys):
    code, out, err = run_json(
        ["les", fixture("s3_into_s3xs3.dgl"), "j", "--degrees", "3:5"], capsys
    )
    assert code == 0
    assert out["all_exact"] is True


def test_grel_identity_like(capsys):
    code, out, err = run_json(
        ["grel", fixture("contractible_pair.dgl"), "i", "--top-degree", "4", "--max-degree", "9"],
        capsys,
    )
    assert code == 0
    assert out["degrees"][0]["dimension"] >= 1


def test_product_command_emits_parseable_model(capsys):
    code, out, err = run_json(
        ["product", fixture("spheres.dgl"), "S3", "--spheres", "2", "--emit"], capsys
    )
    assert code == 0
    assert out["result"]["d_squared_ok"] and out["result"]["minimal"]
    ws = parse_workspace(out["model_text"], truncation=12)
    assert len(ws.models) == 1


def test_cylinder_command(capsys):
    code, out, err = run_json(
        ["cylinder", fixture("spheres.dgl"), "S3", "--max-degree", "8"], capsys
    )
    assert code == 0
    assert out["result"]["far_end_chain_map"] is True
    assert out["result"]["cycle_generators_shift"] is True


def test_verify_homotopy_command(capsys):
    code, out, err = run_json(
        [
            "verify-homotopy",
            fixture("homotopy_demo.dgl"),
            "--start",
            "start",
            "--end",
            "end",
            "--svalues",
            "h",
            "--max-degree",
            "8",
        ],
        capsys,
    )
    assert code == 0
    assert out["holds"] is True


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.dgl"
    bad.write_text("model M { gen x deg 2; }")
    code, out, err = run(["validate", str(bad)], capsys)
    assert code == 2
    assert "parse error" in err


def test_validation_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad_map.dgl"
    bad.write_text(
        "model Y { gen w : deg 2; gen y : deg 3; d y = w; }\n"
        "map b : Y -> Y { w -> 0; y -> y; }\n"
    )
    code, out, err = run(["validate", str(bad)], capsys)
    assert code == 1
    assert "validation error" in err


def test_broken_differential_reported_by_validate(tmp_path, capsys):
    broken = tmp_path / "broken.dgl"
    broken.write_text(
        "model M { gen a : deg 2; gen b : deg 3; gen c : deg 4; d b = a; d c = b; }"
    )
    code, out, err = run(["validate", str(broken)], capsys)
    assert code == 1
    assert "FAILED" in out
    # any computing command refuses to run on an invalid model
    code, out, err = run(["homology", str(broken), "M"], capsys)
    assert code == 1
    assert "validation error" in err


def test_precondition_exit_code(capsys):
    # a top degree whose homology window is beyond the truncation
    code, out, err = run(
        ["evsub", fixture("cp2_to_s4.dgl"), "f", "--top-degree", "11", "--max-degree", "6"],
        capsys,
    )
    assert code == 3
    assert "precondition" in err


def test_untrusted_degrees_flagged_not_silent(capsys):
    code, out, err = run_json(
        ["homology", fixture("spheres.dgl"), "S3", "--degrees", "8:9", "--max-degree", "8"],
        capsys,
    )
    assert code == 0
    flagged = {e["internal"]: e["trusted"] for e in out["degrees"]}
    assert flagged[7] is True and flagged[8] is False


def test_internal_degrees_flag(capsys):
    code, out, err = run_json(
        [
            "homology",
            fixture("cp2_to_s4.dgl"),
            "CP2",
            "--degrees",
            "4:4",
            "--internal-degrees",
            "--max-degree",
            "10",
        ],
        capsys,
    )
    assert code == 0
    entry = out["degrees"][0]
    assert entry["internal"] == 4 and entry["topological"] is None
    assert entry["dimension"] == 1


def test_reports_are_byte_identical(capsys):
    args = ["gseq", fixture("s3_into_s3xs3.dgl"), "j", "--degrees", "2:5", "--format", "json"]
    code1, out1, _ = run(args, capsys)
    code2, out2, _ = run(args, capsys)
    assert code1 == code2 == 0
    assert out1 == out2
