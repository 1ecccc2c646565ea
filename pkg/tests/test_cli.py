import csv
import hashlib
import json
from pathlib import Path

import pytest

from hypspectra.cli import (ConfigError, RunConfig, build_parser, config_hash,
                            load_config, main, parse_config_file)
from hypspectra.eigen import EigensolverError

TINY = ["--refine", "0", "--n", "1", "--N", "1,2"]


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def strip_timestamp(text):
    return "\n".join(line for line in text.splitlines() if '"timestamp"' not in line)


@pytest.fixture(scope="module")
def sweep_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("sweeprun")
    assert main(["sweep", "--out", str(out)] + TINY) == 0
    return out


# -- config validation ------------------------------------------------------------

@pytest.mark.parametrize("kwargs", [
    {"m": 3}, {"m": 7}, {"m": 2},
    {"n": 0}, {"n": -1},
    {"refine": -1},
    {"tol": 0.0}, {"tol": -1e-9},
    {"N": ()}, {"N": (0,)}, {"N": (2, -1)},
    {"cuffs": (1.0, 2.0)}, {"cuffs": (-1.0, 1.0, 1.0)},
    {"twists": (0.5, 0, 0)}, {"twists": (0, 0)},
    {"seed": 1.5},
    {"mass": "diagonal"}, {"testfn": "ramped"},
])
def test_config_rejects_bad_values(kwargs):
    with pytest.raises(ConfigError):
        RunConfig(**kwargs)


def test_config_defaults_valid():
    config = RunConfig()
    assert config.m == 8 and config.refine == 2 and config.n == 2
    assert config.N == (1, 2, 4, 8)
    assert config.mass == "consistent" and config.testfn == "two-sided"


def test_config_hash_ignores_output_path():
    a = RunConfig(out="runs/a")
    b = RunConfig(out="somewhere/else")
    assert config_hash(a) == config_hash(b)
    assert len(config_hash(a)) == 16
    int(config_hash(a), 16)     # hex digest prefix
    assert config_hash(RunConfig(n=3)) != config_hash(RunConfig(n=2))
    assert config_hash(RunConfig(seed=1)) != config_hash(RunConfig(seed=0))


def test_config_file_then_flags(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(
        "# geometry\n"
        "cuffs = 2.0, 2.0, 2.0\n"
        "n = 3          # overridden by the flag below\n"
        "N = 1, 2\n"
        "\n"
        "seed = 5\n")
    raw = parse_config_file(path)
    assert raw["n"] == "3" and raw["N"] == "1, 2"

    args = build_parser().parse_args(["sweep", "--config", str(path), "--n", "2"])
    config = load_config(args)
    assert config.n == 2                 # flag wins over file
    assert config.N == (1, 2)            # file wins over default
    assert config.seed == 5
    assert config.refine == 2            # untouched default


def test_config_file_unknown_key(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("frobs = 3\n")
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config_file(path)
    assert main(["sweep", "--config", str(path)]) == 2


def test_config_file_bad_syntax(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("just some words\n")
    with pytest.raises(ConfigError, match="run.cfg:1"):
        parse_config_file(path)


def test_main_rejects_bad_value(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("tol = -1\n")
    assert main(["sweep", "--config", str(path)]) == 2
    assert main(["sweep", "--tol", "0", "--out", str(tmp_path)]) == 2


def test_unknown_subcommand_is_usage_error():
    with pytest.raises(SystemExit):
        main(["frobnicate"])


# -- build -------------------------------------------------------------------------

def test_build_writes_verifiable_manifest(tmp_path):
    out = tmp_path / "run"
    assert main(["build", "--out", str(out)] + TINY) == 0
    manifest = json.loads((out / "build.json").read_text())
    assert manifest["base_genus"] == 2
    assert [e["file"] for e in manifest["files"]] == [
        "base.hypmesh", "cover_n1_N1.hypmesh", "cover_n1_N2.hypmesh"]
    for entry in manifest["files"]:
        digest = hashlib.sha256((out / entry["file"]).read_bytes()).hexdigest()
        assert digest == entry["sha256"]
    # genus 1 + d(g-1) for degrees 2 and 4 over genus 2
    assert [e["genus"] for e in manifest["files"]] == [2, 3, 5]


def test_build_rerun_is_deterministic(tmp_path):
    out = tmp_path / "run"
    assert main(["build", "--out", str(out)] + TINY) == 0
    first = {p.name: p.read_bytes() for p in out.iterdir()}
    assert main(["build", "--out", str(out)] + TINY) == 0
    for p in sorted(out.iterdir()):
        if p.suffix == ".hypmesh":
            assert p.read_bytes() == first[p.name]
        else:
            assert (strip_timestamp(p.read_text())
                    == strip_timestamp(first[p.name].decode()))


# -- sweep -------------------------------------------------------------------------

def test_sweep_outputs(sweep_dir):
    header, rows = read_csv(sweep_dir / "sweep.csv")
    assert header == ["N", "d", "dof", "lambda_0", "lambda_1", "lambda_2",
                      "h", "eta", "t", "bound", "certificate", "bound_holds",
                      "certificate_holds", "chain_assumptions_hold", "failed",
                      "config_hash"]
    assert [r[0] for r in rows] == ["1", "2"]
    expected_hash = config_hash(RunConfig(refine=0, n=1, N=(1, 2)))
    for r in rows:
        assert r[-1] == expected_hash
        assert r[header.index("failed")] == "false"
        assert r[header.index("bound_holds")] == "true"
        # float cells are full-precision reprs, so they parse back exactly
        assert repr(float(r[header.index("bound")])) == r[header.index("bound")]

    doc = json.loads((sweep_dir / "sweep.json").read_text())
    assert doc["config_hash"] == expected_hash
    assert all(doc["asserted"].values())
    assert [row["N"] for row in doc["rows"]] == [1, 2]
    assert doc["rows"][0]["report"]["testfn_variant"] == "two-sided"


def test_sweep_rerun_identical_modulo_timestamp(sweep_dir):
    before_csv = (sweep_dir / "sweep.csv").read_text()
    before_json = (sweep_dir / "sweep.json").read_text()
    assert main(["sweep", "--out", str(sweep_dir)] + TINY) == 0
    assert (sweep_dir / "sweep.csv").read_text() == before_csv
    assert (strip_timestamp((sweep_dir / "sweep.json").read_text())
            == strip_timestamp(before_json))


def test_sweep_records_solver_failures(tmp_path, monkeypatch):
    def explode(*args, **kwargs):
        raise EigensolverError("injected failure")

    monkeypatch.setattr("hypspectra.cli.solve_smallest", explode)
    out = tmp_path / "run"
    assert main(["sweep", "--out", str(out)] + TINY) == 1
    doc = json.loads((out / "sweep.json").read_text())
    assert [row["failed"] for row in doc["rows"]] == [True, True]
    assert all("injected failure" in row["error"] for row in doc["rows"])
    assert doc["asserted"]["all_rows_succeeded"] is False
    header, rows = read_csv(out / "sweep.csv")
    assert [r[header.index("failed")] for r in rows] == ["true", "true"]
    assert [r[header.index("lambda_0")] for r in rows] == ["", ""]


def test_sweep_testfn_variant_flows_through(tmp_path):
    out = tmp_path / "run"
    assert main(["sweep", "--out", str(out), "--testfn", "one-sided"] + TINY) == 0
    doc = json.loads((out / "sweep.json").read_text())
    assert all(row["report"]["testfn_variant"] == "one-sided"
               for row in doc["rows"])


# -- corollary ----------------------------------------------------------------------

def test_corollary_from_sweep(sweep_dir):
    assert main(["corollary", "--out", str(sweep_dir)] + TINY) == 0
    header, rows = read_csv(sweep_dir / "corollary.csv")
    assert header == ["N", "d", "genus", "witness_length", "lambda_n", "ratio",
                      "config_hash"]
    assert [r[header.index("genus")] for r in rows] == ["3", "5"]
    assert [r[header.index("witness_length")] for r in rows] == ["4.0", "4.0"]
    ratios = [float(r[header.index("ratio")]) for r in rows]
    assert ratios[1] < ratios[0]
    doc = json.loads((sweep_dir / "corollary.json").read_text())
    assert all(doc["asserted"].values())
    assert "genus" in doc["note"]


def test_corollary_rejects_other_config(sweep_dir, capsys):
    rc = main(["corollary", "--out", str(sweep_dir), "--refine", "0",
               "--n", "1", "--N", "1,2", "--seed", "9"])
    assert rc == 2
    assert "refusing to mix" in capsys.readouterr().err


def test_corollary_needs_a_sweep(tmp_path):
    assert main(["corollary", "--out", str(tmp_path)] + TINY) == 2


# -- converge -----------------------------------------------------------------------

def test_converge_needs_three_levels(tmp_path):
    assert main(["converge", "--out", str(tmp_path), "--refine", "1"]) == 2


def test_converge_outputs(tmp_path):
    out = tmp_path / "run"
    assert main(["converge", "--out", str(out), "--refine", "2"]) == 0
    header, rows = read_csv(out / "converge.csv")
    assert header == ["level", "dof", "area", "lambda_0", "lambda_1", "lambda_2",
                      "lambda_3", "lambda_4", "config_hash"]
    assert [r[0] for r in rows] == ["0", "1", "2"]
    dofs = [int(r[1]) for r in rows]
    assert dofs[1] > dofs[0] and dofs[2] > dofs[1]
    doc = json.loads((out / "converge.json").read_text())
    assert all(doc["asserted"].values())
    assert set(doc["ratios"]) == {"1", "2", "3", "4"}
    assert len(doc["ratio_flags"]) == 4      # one interior triple per k


# -- oracle-check --------------------------------------------------------------------

def test_oracle_check_all_pass(tmp_path):
    out = tmp_path / "run"
    assert main(["oracle-check", "--out", str(out)] + TINY) == 0
    doc = json.loads((out / "oracle_check.json").read_text())
    names = [c["name"] for c in doc["checks"]]
    assert names == ["random_pencils_sparse_vs_dense",
                     "pipeline_meshes_sparse_vs_dense",
                     "cone_angles_flat",
                     "area_matches_curvature_total",
                     "euler_characteristic_multiplicative",
                     "deck_relabeling_preserves_pencil_bits",
                     "h_scales_inversely_with_N"]
    assert all(c["passed"] for c in doc["checks"])
