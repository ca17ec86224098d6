#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Тесты командной строки: форматы файлов и коды завершения
"""

import json

import numpy as np
import pandas as pd
import pytest

from src.cli import spectra_cli
from src.cli.spectra_cli import main
from src.core.errors import NumericalError
from src.fractal.selfsimilar import make_params
from src.fractal.spectral import eigenvalues
from src.fractal.stieltjes_string import BoundaryCondition, assemble_pencil, build_string

CANTOR = ["--kappa", "2", "--a", "0.3333333333333333"]


class TestEigs:
    def test_csv(self, tmp_path):
        path = tmp_path / "eigs.csv"
        code = main(["eigs", *CANTOR, "--bc", "neumann", "--level", "3", "--count", "4", "--path", str(path)])
        assert code == 0
        text = path.read_text(encoding="utf-8")
        assert text.startswith("n,lambda\n")
        assert "\r" not in text
        frame = pd.read_csv(path)
        assert list(frame["n"]) == [0, 1, 2, 3]
        assert frame["lambda"][0] == 0.0
        assert np.all(np.diff(frame["lambda"]) > 0.0)

    def test_json_schema(self, tmp_path):
        path = tmp_path / "eigs.json"
        code = main([
            "eigs", *CANTOR, "--bc", "robin", "--gamma0", "2", "--gamma1", "2",
            "--level", "4", "--count", "3", "--out", "json", "--path", str(path),
        ])
        assert code == 0
        payload = json.loads(path.read_text(encoding="utf-8"))
        assert list(payload) == ["params", "bc", "level", "tol", "eigenvalues"]
        assert list(payload["params"]) == ["kappa", "a", "b", "nu", "D"]
        assert payload["bc"] == {"kind": "robin", "gamma0": 2.0, "gamma1": 2.0}
        assert payload["level"] == 4
        assert len(payload["eigenvalues"]) == 3

    def test_csv_round_trip_is_exact(self, tmp_path):
        path = tmp_path / "eigs.csv"
        main(["eigs", *CANTOR, "--bc", "dirichlet", "--level", "4", "--count", "6", "--path", str(path)])
        pencil = assemble_pencil(build_string(make_params(2, 1.0 / 3.0), 4), BoundaryCondition.dirichlet())
        expected = eigenvalues(pencil, range(6), 1e-10)
        np.testing.assert_array_equal(pd.read_csv(path)["lambda"].to_numpy(), expected)

    def test_json_round_trip_is_exact(self, tmp_path):
        path = tmp_path / "eigs.json"
        main(["eigs", *CANTOR, "--bc", "robin", "--gamma0", "0", "--gamma1", "2",
              "--level", "5", "--count", "8", "--out", "json", "--path", str(path)])
        payload = json.loads(path.read_text(encoding="utf-8"))
        pencil = assemble_pencil(build_string(make_params(2, 1.0 / 3.0), 5), BoundaryCondition.robin(0.0, 2.0))
        np.testing.assert_array_equal(np.array(payload["eigenvalues"]), eigenvalues(pencil, range(8), 1e-10))
        assert payload["tol"] == 1e-10
        assert payload["params"]["nu"] == make_params(2, 1.0 / 3.0).nu

    def test_thin_weight(self, tmp_path):
        path = tmp_path / "eigs.csv"
        code = main(["eigs", "--kappa", "2", "--a", "0.1", "--bc", "neumann",
                     "--level", "9", "--count", "12", "--path", str(path)])
        assert code == 0
        assert np.all(np.diff(pd.read_csv(path)["lambda"]) > 0.0)

    def test_solver_section_of_config_is_used(self, tmp_path):
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps({"solver": {"pivot_floor": float("inf")}}), encoding="utf-8")
        code = main(["--config", str(config_path), "eigs", *CANTOR, "--level", "3", "--count", "2",
                     "--path", str(tmp_path / "x.csv")])
        assert code == 3

    def test_invalid_solver_config(self, tmp_path):
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps({"solver": {"perturb_retries": -1}}), encoding="utf-8")
        code = main(["--config", str(config_path), "eigs", *CANTOR, "--level", "3", "--count", "2",
                     "--path", str(tmp_path / "x.csv")])
        assert code == 2

    def test_deterministic(self, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        for path in (first, second):
            main(["eigs", *CANTOR, "--level", "5", "--count", "8", "--path", str(path)])
        assert first.read_bytes() == second.read_bytes()

    def test_level_over_cap(self, tmp_path):
        code = main(["eigs", *CANTOR, "--level", "30", "--count", "2", "--path", str(tmp_path / "x.csv")])
        assert code == 2

    def test_bad_parameter(self, tmp_path):
        code = main(["eigs", "--kappa", "2", "--a", "0.5", "--level", "3", "--count", "2",
                     "--path", str(tmp_path / "x.csv")])
        assert code == 2

    def test_count_out_of_range(self, tmp_path):
        code = main(["eigs", *CANTOR, "--level", "2", "--count", "10", "--path", str(tmp_path / "x.csv")])
        assert code == 2

    def test_numerical_failure(self, tmp_path, monkeypatch):
        def broken(*args, **kwargs):
            raise NumericalError("бисекция не сошлась")

        monkeypatch.setattr(spectra_cli, "spectrum", broken)
        code = main(["eigs", *CANTOR, "--level", "3", "--count", "2", "--path", str(tmp_path / "x.csv")])
        assert code == 3


class TestFlags:
    def test_unknown_flag(self):
        assert main(["eigs", "--bogus"]) == 2

    def test_missing_command(self):
        assert main([]) == 2

    def test_bad_choice(self, tmp_path):
        assert main(["eigs", "--bc", "periodic", "--level", "2", "--count", "1", "--path", str(tmp_path / "x")]) == 2


class TestPeriodicity:
    @pytest.mark.parametrize("check", ["neumann", "robin", "mixed"])
    def test_identity_holds(self, capsys, check):
        code = main(["periodicity", *CANTOR, "--check", check, "--level", "6", "--n-max", "5"])
        assert code == 0
        out = capsys.readouterr().out
        assert "residual" in out
        assert "max residual" in out

    def test_mixed_odd_kappa(self):
        assert main(["periodicity", "--kappa", "3", "--a", "0.2", "--check", "mixed", "--level", "4", "--n-max", "3"]) == 2

    def test_residual_over_limit(self, monkeypatch):
        monkeypatch.setattr(spectra_cli, "PERIODICITY_LIMIT", 0.0)
        assert main(["periodicity", *CANTOR, "--check", "neumann", "--level", "4", "--n-max", "3"]) == 3


class TestSigma:
    def test_files_and_report(self, tmp_path, capsys):
        sigma_path, s_path = tmp_path / "sigma.csv", tmp_path / "s.csv"
        code = main([
            "sigma", *CANTOR, "--k", "1", "--level", "8", "--grid", "101",
            "--sigma-path", str(sigma_path), "--s-path", str(s_path),
        ])
        assert code == 0
        sigma = pd.read_csv(sigma_path)
        assert list(sigma.columns) == ["t", "sigma"]
        assert len(sigma) == 3
        assert sigma["t"][1] == pytest.approx(0.168, abs=2e-3)
        assert list(sigma["sigma"]) == [0.0, 0.5, 0.5]
        s = pd.read_csv(s_path)
        assert list(s.columns) == ["t", "s"]
        assert len(s) == 101
        out = capsys.readouterr().out
        assert "range(s)" in out
        assert "cauchy" in out

    def test_insufficient_level(self, tmp_path):
        code = main(["sigma", *CANTOR, "--k", "3", "--level", "4",
                     "--sigma-path", str(tmp_path / "a.csv"), "--s-path", str(tmp_path / "b.csv")])
        assert code == 2


class TestApprox:
    def test_identity(self, tmp_path, capsys):
        source = tmp_path / "in.csv"
        xs = np.linspace(0.0, 1.0, 257)
        pd.DataFrame({"x": xs, "f": xs}).to_csv(source, index=False)
        out_path = tmp_path / "out.csv"
        code = main(["approx", "--input", str(source), "--n", "2", "--eps", "0.001", "--path", str(out_path)])
        assert code == 0
        frame = pd.read_csv(out_path)
        assert list(frame.columns) == ["break", "value_left", "value_right"]
        np.testing.assert_allclose(frame["break"], [0.125, 0.375, 0.625, 0.875])
        assert "c_2" in capsys.readouterr().out

    def test_non_monotone_input(self, tmp_path):
        source = tmp_path / "in.csv"
        pd.DataFrame({"x": [0.0, 1.0, 2.0], "f": [0.0, 1.0, 0.5]}).to_csv(source, index=False)
        code = main(["approx", "--input", str(source), "--n", "2", "--path", str(tmp_path / "o.csv")])
        assert code == 4

    def test_missing_column(self, tmp_path):
        source = tmp_path / "in.csv"
        pd.DataFrame({"x": [0.0, 1.0], "y": [0.0, 1.0]}).to_csv(source, index=False)
        assert main(["approx", "--input", str(source), "--n", "1", "--path", str(tmp_path / "o.csv")]) == 2

    def test_missing_file(self, tmp_path):
        assert main(["approx", "--input", str(tmp_path / "none.csv"), "--n", "1",
                     "--path", str(tmp_path / "o.csv")]) == 2


def test_tables_writes_csv(tmp_path, capsys):
    path = tmp_path / "table.csv"
    code = main(["tables", *CANTOR, "--which", "mixed", "--level", "6", "--rows", "3", "--path", str(path)])
    assert code == 0
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["n", "base", "scaled", "target"]
    assert len(frame) == 3
    assert "target" in capsys.readouterr().out
