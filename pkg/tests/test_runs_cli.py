import json
import os

import numpy as np
import pytest
from pydantic import ValidationError

from quaplectic.cli import main
from quaplectic.exports import fmt, spectrum_csv, write_artifacts
from quaplectic.runs import (BoostRequest, ExportRequest, GTRequest,
                             SpectrumRequest, VerifyRequest, boost_run,
                             export_run, gt_run, spectrum_run)


class TestConfigValidation:
    def test_ranges(self):
        with pytest.raises(ValidationError):
            SpectrumRequest(n=0)
        with pytest.raises(ValidationError):
            SpectrumRequest(nmax=1)
        with pytest.raises(ValidationError):
            SpectrumRequest(tol=0.0)
        with pytest.raises(ValidationError):
            SpectrumRequest(s=0.0)
        with pytest.raises(ValidationError):
            SpectrumRequest(c=0.0)

    def test_label_must_be_non_increasing(self):
        with pytest.raises(ValidationError):
            GTRequest(sigma_label=(0, 1))


class TestHandlers:
    def test_oscillator_spectrum_values(self):
        rep = spectrum_run(SpectrumRequest(mode="oscillator", n=3, nmax=8))
        assert rep.ok
        distinct = [lv for lv, _ in rep.report["distinct"]]
        # distinct eigenvalues are exactly {2k + 2} over the represented gradings
        assert distinct == [float(2 * k + 2) for k in range(-8, 9)]
        assert "spectrum.csv" in rep.artifacts and "run_manifest.txt" in rep.artifacts

    def test_compact_spectrum(self):
        rep = spectrum_run(SpectrumRequest(mode="compact", n=2, k_block=2,
                                           sigma_label=(1, 0), beta_order=2))
        assert rep.ok
        mults = sorted(m for _, m in rep.report["distinct"])
        assert mults == [2, 4]

    def test_casimir_spectrum(self):
        rep = spectrum_run(SpectrumRequest(mode="casimir", n=1, nmax=8, s=2.0,
                                           c=2.0, beta_order=1, sigma_label=(1, 0)))
        assert rep.ok

    def test_boost_matches_velocity_form(self):
        from quaplectic.kinematics import velocity_boost
        rep = boost_run(BoostRequest(beta=(0.3, 0.0, 0.0)))
        assert rep.ok and rep.report["max_born_defect"] < 1e-10
        got = np.array(rep.report["matrix"])
        assert np.max(np.abs(got - velocity_boost((0.3, 0, 0)))) < 1e-14

    def test_gt_run(self):
        rep = gt_run(GTRequest(sigma_label=(2, 1, -1), ops=False))
        assert rep.ok
        assert rep.report["dim"] == 15 == rep.report["weyl_dimension"]
        assert "gt_patterns_2,1,-1.txt" in rep.artifacts

    def test_gt_ops_mm(self):
        rep = gt_run(GTRequest(sigma_label=(1, 0), ops=True, fmt="mm"))
        mm = rep.artifacts["gt_sigma_1,0_1_2.mtx"]
        assert mm.startswith("%%MatrixMarket matrix coordinate complex general")

    def test_export_sc_table(self):
        rep = export_run(ExportRequest(what="sc-table", basis="real", n=1))
        text = next(iter(rep.artifacts.values()))
        assert "X(0) Y(0) -1 I" in text

    def test_export_ladder_mm(self):
        rep = export_run(ExportRequest(what="ladder", n=1, nmax=4, mode_index=1, sign="+"))
        content = next(iter(rep.artifacts.values()))
        lines = content.splitlines()
        assert lines[0].startswith("%%MatrixMarket")
        rows, cols, nnz = (int(x) for x in lines[2].split())
        assert rows == cols == 15

    def test_export_basis(self):
        rep = export_run(ExportRequest(what="basis", n=1, nmax=2))
        assert rep.report["dim"] == 6


class TestDeterminism:
    def test_byte_identical_artifacts(self):
        req = SpectrumRequest(mode="oscillator", n=2, nmax=6)
        a = spectrum_run(req).artifacts
        b = spectrum_run(req).artifacts
        assert a == b

    def test_verify_report_stable(self):
        req = VerifyRequest(n=1, nmax=6, group_trials=5, n_alg=1)
        a = None
        from quaplectic.runs import verify_run
        for _ in range(2):
            out = verify_run(req).artifacts["verify_report.txt"]
            assert a is None or out == a
            a = out

    def test_float_format(self):
        assert fmt(1.0 / 3.0) == "0.33333333333333331"
        assert fmt(True) == "true"


class TestCLI:
    def test_spectrum_exit_zero(self, tmp_path, capsys):
        rc = main(["--out", str(tmp_path), "spectrum", "--mode", "oscillator",
                   "--n", "2", "--nmax", "6"])
        assert rc == 0
        assert (tmp_path / "spectrum.csv").exists()
        assert (tmp_path / "run_manifest.txt").exists()

    def test_boost_flags(self, tmp_path, capsys):
        rc = main(["--out", str(tmp_path), "boost", "--beta", "0.3,0,0",
                   "--gamma", "0", "--format", "csv"])
        assert rc == 0
        assert (tmp_path / "boost_matrix.csv").exists()

    def test_invalid_config_exit_two(self, tmp_path, capsys):
        rc = main(["--out", str(tmp_path), "spectrum", "--n", "0"])
        assert rc == 2

    def test_config_file_precedence(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("mode = oscillator\nn = 3\nnmax = 6\n")
        rc = main(["--config", str(cfg), "--out", str(tmp_path), "--json",
                   "spectrum", "--n", "1"])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        # the flag wins over the file
        assert report["report"]["metadata"]["n"] == 1

    def test_gt_cli(self, tmp_path, capsys):
        rc = main(["--out", str(tmp_path), "gt", "--sigma-label", "1,0", "--no-ops"])
        assert rc == 0

    def test_json_output(self, tmp_path, capsys):
        rc = main(["--out", str(tmp_path), "--json", "export", "--what", "sc-table",
                   "--n", "1", "--basis", "complex"])
        assert rc == 0
        data = json.loads(capsys.readouterr().out)
        assert data["ok"] is True


def test_write_artifacts_atomic(tmp_path):
    paths = write_artifacts(str(tmp_path), {"a.txt": "hello\n", "b.txt": "x\n"})
    assert sorted(os.path.basename(p) for p in paths) == ["a.txt", "b.txt"]
    assert (tmp_path / "a.txt").read_text() == "hello\n"


def test_spectrum_csv_quoting_and_shape():
    class R:
        eigenvalues = np.array([1.0, 1.0, 2.0])
        residuals = np.array([1e-16, 2e-16, 0.0])

        def clusters(self, tol=1e-8):
            return [(1.0, 2), (2.0, 1)]

    text = spectrum_csv(R())
    lines = text.strip().splitlines()
    assert lines[0] == "eigenvalue,multiplicity,residual"
    assert lines[1].split(",")[1] == "2"
