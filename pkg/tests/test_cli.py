"""End-to-end CLI behaviour through subprocesses and files."""

import json
import subprocess
import sys

import numpy as np
import pytest

from qsysid import serialize, transfer_rational

from conftest import chain_system
from test_network import chain_network, tree_network


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "qsysid", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


def write_json(path, obj):
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


@pytest.fixture
def chain_file(tmp_path):
    return write_json(tmp_path / "chain.json", serialize.system_to_obj(chain_system()))


class TestAnalyze:
    def test_chain_report(self, chain_file):
        proc = run_cli("analyze", chain_file)
        assert proc.returncode == 0
        report = json.loads(proc.stdout)
        assert report["minimal"] is True
        assert report["hurwitz"] is True
        assert report["ctrb_rank"] == 3

    def test_degenerate_chain_still_exit_zero(self, tmp_path):
        path = write_json(
            tmp_path / "chain0.json",
            serialize.system_to_obj(chain_system(0.5, 0.0, 0.8)),
        )
        proc = run_cli("analyze", path)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["minimal"] is False

    def test_truncated_json_exit_two(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"n": 3, "m": 1, "omega": [[', encoding="utf-8")
        proc = run_cli("analyze", str(path))
        assert proc.returncode == 2
        err = json.loads(proc.stderr)
        assert "error" in err

    def test_missing_file_exit_two(self):
        proc = run_cli("analyze", "/nonexistent/system.json")
        assert proc.returncode == 2


class TestEquiv:
    def test_sign_flip_equivalent(self, tmp_path, chain_file):
        other = write_json(
            tmp_path / "flipped.json",
            serialize.system_to_obj(chain_system(0.5, -0.6, 0.8)),
        )
        proc = run_cli("equiv", chain_file, other)
        assert proc.returncode == 0
        verdict = json.loads(proc.stdout)
        assert verdict["equivalent"] is True
        gauge = serialize.matrix_from_obj(verdict["gauge"])
        np.testing.assert_allclose(gauge, np.diag([1.0, -1.0, -1.0]), atol=1e-8)

    def test_not_minimal_exit_one(self, tmp_path, chain_file):
        degenerate = write_json(
            tmp_path / "deg.json",
            serialize.system_to_obj(chain_system(0.5, 0.0, 0.8)),
        )
        proc = run_cli("equiv", chain_file, degenerate)
        assert proc.returncode == 1
        assert json.loads(proc.stderr)["error"] == "NotMinimal"


class TestReconstruct:
    def test_chain_roundtrip(self, tmp_path):
        tf = transfer_rational(chain_system())
        path = write_json(tmp_path / "tf.json", serialize.tf_to_obj(tf))
        proc = run_cli("reconstruct", path)
        assert proc.returncode == 0
        out = json.loads(proc.stdout)
        assert out["canonical"]["theta"] == pytest.approx(1.0, abs=1e-9)
        rebuilt = serialize.system_from_obj(out["system"])
        np.testing.assert_allclose(
            np.linalg.eigvalsh(rebuilt.omega), [-1.0, 0.0, 1.0], atol=1e-8
        )

    def test_gauge_flag_lands_in_requested_basis(self, tmp_path):
        from qsysid import make_rational_tf

        a0, a1 = 2.0, 0.3
        tf = make_rational_tf([a0, a1 - 2 * a1, 1.0], [a0, a1, 1.0])
        tf_path = write_json(tmp_path / "tf2.json", serialize.tf_to_obj(tf))
        gauge = np.array([[0.0, -1.0], [1j, 0.0]])
        gauge_path = write_json(tmp_path / "u.json", serialize.matrix_to_obj(gauge))
        proc = run_cli("reconstruct", tf_path, "--gauge", gauge_path)
        assert proc.returncode == 0
        system = serialize.system_from_obj(json.loads(proc.stdout)["system"])
        np.testing.assert_allclose(
            system.omega, [[0.0, np.sqrt(a0)], [np.sqrt(a0), 0.0]], atol=1e-10
        )
        np.testing.assert_allclose(system.c, [[np.sqrt(2 * a1), 0.0]], atol=1e-10)

    def test_non_passive_exit_one(self, tmp_path):
        a0, a1, c1 = 2.0, 0.3, -0.45
        from qsysid import make_rational_tf

        tf = make_rational_tf([a0, a1 + c1, 1.0], [a0, a1, 1.0])
        path = write_json(tmp_path / "bad.json", serialize.tf_to_obj(tf))
        proc = run_cli("reconstruct", path)
        assert proc.returncode == 1
        assert json.loads(proc.stderr)["error"] == "NotPassiveTF"


class TestInfect:
    def test_chain_verdict(self, tmp_path):
        path = write_json(
            tmp_path / "chain_net.json", serialize.network_to_obj(chain_network())
        )
        proc = run_cli("infect", path)
        assert proc.returncode == 0
        out = json.loads(proc.stdout)
        assert out["verdict"] == "IdentifiableByInfection"
        assert out["trace"]["infecting"] is True
        assert out["trace"]["steps"] == [[1, 0], [2, 1]]

    def test_tree_not_applicable(self, tmp_path):
        path = write_json(
            tmp_path / "tree_net.json", serialize.network_to_obj(tree_network())
        )
        proc = run_cli("infect", path)
        assert proc.returncode == 0
        out = json.loads(proc.stdout)
        assert out["verdict"] == "NotApplicable"
        assert out["reason"] == "NotInfecting"


class TestProbeFitCompose:
    def test_pipeline_through_files(self, tmp_path, chain_file):
        probe = run_cli(
            "probe",
            chain_file,
            "--freqs",
            "0.01:100:60:log",
            "--seed",
            "5",
            "--csv",
            str(tmp_path / "resp.csv"),
            cwd=str(tmp_path),
        )
        assert probe.returncode == 0
        dataset_path = tmp_path / "data.json"
        dataset_path.write_text(probe.stdout, encoding="utf-8")
        system_path = tmp_path / "rebuilt.json"
        fit = run_cli(
            "fit", str(dataset_path), "--degree", "3",
            "--system-out", str(system_path),
        )
        assert fit.returncode == 0
        out = json.loads(fit.stdout)
        assert out["canonical"]["theta"] == pytest.approx(1.0, abs=1e-6)
        analyze = run_cli("analyze", str(system_path))
        assert analyze.returncode == 0
        assert json.loads(analyze.stdout)["minimal"] is True

    def test_probe_deterministic(self, tmp_path, chain_file):
        args = ["probe", chain_file, "--freqs", "0.1:10:20:log",
                "--noise", "1e-3", "--seed", "11",
                "--csv", str(tmp_path / "r.csv")]
        out1 = run_cli(*args, cwd=str(tmp_path))
        out2 = run_cli(*args, cwd=str(tmp_path))
        assert out1.stdout == out2.stdout

    def test_csv_format(self, tmp_path, chain_file):
        csv_path = tmp_path / "resp.csv"
        proc = run_cli(
            "probe", chain_file, "--freqs", "0.1:10:5:log",
            "--csv", str(csv_path), cwd=str(tmp_path),
        )
        assert proc.returncode == 0
        lines = csv_path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "omega,re_00,im_00,abs_00,arg_00"
        assert len(lines) == 6
        first = lines[1].split(",")
        assert len(first) == 5
        w = float(first[0])
        re, im = float(first[1]), float(first[2])
        assert float(first[3]) == pytest.approx(np.hypot(re, im), rel=1e-12)
        assert w == pytest.approx(0.1)

    def test_bad_freq_spec_exit_two(self, chain_file):
        proc = run_cli("probe", chain_file, "--freqs", "10:1:5:log")
        assert proc.returncode == 2
