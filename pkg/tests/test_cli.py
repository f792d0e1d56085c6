import json

import numpy as np
import pytest

from qcoherence.cli import main
from qcoherence.io import (
    format_matrix,
    parse_matrix,
    read_matrix,
    write_matrix,
)
from qcoherence.errors import MatrixParseError


@pytest.fixture
def eps_state_file(tmp_path):
    path = tmp_path / "eps.txt"
    write_matrix(path, np.array([[0.5, 0.05], [0.05, 0.5]], dtype=complex))
    return str(path)


@pytest.fixture
def basis_files(tmp_path):
    z = tmp_path / "z.txt"
    x = tmp_path / "x.txt"
    write_matrix(z, np.eye(2, dtype=complex))
    write_matrix(x, np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2))
    return str(z), str(x)


class TestMatrixFormat:
    def test_round_trip(self):
        rng = np.random.default_rng(0)
        m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        assert (parse_matrix(format_matrix(m)) == m).all()

    def test_plain_reals_accepted(self):
        m = parse_matrix("2\n0.5 0.05\n0.05 0.5\n")
        assert m.dtype == np.complex128
        assert m[0, 1] == 0.05

    def test_reports_offending_line(self):
        with pytest.raises(MatrixParseError) as err:
            parse_matrix("2\n1+0j 0j\n1+0j\n")
        assert err.value.line == 3

    def test_bad_token(self):
        with pytest.raises(MatrixParseError, match="banana"):
            parse_matrix("1\nbanana\n")

    def test_row_count_mismatch(self):
        with pytest.raises(MatrixParseError):
            parse_matrix("3\n1 0 0\n0 1 0\n")

    def test_file_round_trip(self, tmp_path):
        path = tmp_path / "m.txt"
        m = np.array([[0.0, 1.0j], [-1.0j, 0.0]])
        write_matrix(path, m)
        assert (read_matrix(path) == m).all()


class TestMeasureCommand:
    def test_default_text_output(self, eps_state_file, capsys):
        rc = main(["measure", eps_state_file, "--measures", "eta1,eta2,eta_inf"])
        assert rc == 0
        lines = capsys.readouterr().out.strip().splitlines()
        values = {k.strip(): float(v) for k, v in (line.split("=") for line in lines)}
        assert values["eta1"] == pytest.approx(0.1, abs=1e-12)
        assert values["eta2"] == pytest.approx(0.1 / np.sqrt(2), abs=1e-9)
        assert values["eta_inf"] == pytest.approx(0.1, abs=1e-12)

    def test_json_output_with_srel(self, eps_state_file, capsys):
        rc = main(["measure", eps_state_file, "--json", "--measures", "s_rel", "--c", "2"])
        assert rc == 0
        values = json.loads(capsys.readouterr().out)
        assert values["s_rel"] == pytest.approx(2 * 0.005008366846356804, abs=1e-9)

    def test_csv_output(self, eps_state_file, capsys):
        rc = main(["measure", eps_state_file, "--csv", "--measures", "eta1,delta"])
        assert rc == 0
        header, row = capsys.readouterr().out.strip().splitlines()
        assert header == "eta1,delta"
        assert [float(x) for x in row.split(",")] == pytest.approx([0.1, 1.0])

    def test_maximally_mixed_gives_zeros(self, tmp_path, basis_files, capsys):
        path = tmp_path / "mm.txt"
        write_matrix(path, np.eye(2, dtype=complex) / 2)
        # the off-diagonal measures vanish in any basis; delta is pinned to
        # the solver's eigenbasis, so it vanishes at the standard basis
        rc = main(["measure", str(path), "--basis", basis_files[1], "--json",
                   "--measures", "eta1,eta2,eta_inf,s_rel"])
        assert rc == 0
        values = json.loads(capsys.readouterr().out)
        assert all(abs(v) < 1e-12 for v in values.values())
        rc = main(["measure", str(path), "--json"])
        assert rc == 0
        values = json.loads(capsys.readouterr().out)
        assert all(abs(v) < 1e-12 for v in values.values())

    def test_parse_error_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("2\n1+0j 0j\n")
        rc = main(["measure", str(bad)])
        assert rc == 2
        err = capsys.readouterr().err.splitlines()
        assert err[0] == "E_PARSE"
        assert "line" in err[1]

    def test_validation_error_exit_3(self, tmp_path, capsys):
        bad = tmp_path / "trace.txt"
        write_matrix(bad, np.diag([1.0, 0.1]).astype(complex))
        rc = main(["measure", str(bad)])
        assert rc == 3
        err = capsys.readouterr().err.splitlines()
        assert err[0] == "E_VALIDATION"
        assert "tr" in err[1]

    def test_unknown_measure_exit_2(self, eps_state_file, capsys):
        rc = main(["measure", eps_state_file, "--measures", "eta7"])
        assert rc == 2
        assert capsys.readouterr().err.splitlines()[0] == "E_USAGE"


class TestDistanceCommand:
    def test_same_file_twice(self, basis_files, capsys):
        z, _ = basis_files
        rc = main(["distance", z, z])
        assert rc == 0
        out = capsys.readouterr().out
        assert "distance = 0" in out
        assert "mutually_unbiased = false" in out

    def test_unbiased_pair(self, basis_files, capsys):
        z, x = basis_files
        rc = main(["distance", z, x])
        assert rc == 0
        out = capsys.readouterr().out
        assert "distance = 1" in out
        assert "mutually_unbiased = true" in out

    def test_dimension_mismatch_exit_3(self, basis_files, tmp_path, capsys):
        z, _ = basis_files
        other = tmp_path / "b3.txt"
        write_matrix(other, np.eye(3, dtype=complex))
        rc = main(["distance", z, str(other)])
        assert rc == 3
        assert capsys.readouterr().err.splitlines()[0] == "E_VALIDATION"


class TestExperimentCommand:
    def test_purity_suite_writes_csv_and_passes(self, tmp_path, capsys):
        rc = main([
            "experiment", "purity", "--n", "4,8", "--samples", "300",
            "--seed", "7", "--out", str(tmp_path),
        ])
        assert rc == 0
        text = (tmp_path / "purity.csv").read_text()
        assert text.endswith("# verdict = pass\n")
        assert "# seed = 7" in text

    def test_byte_identical_reruns(self, tmp_path):
        args = ["experiment", "srel", "--c", "0.5,2", "--seed", "3"]
        main(args + ["--out", str(tmp_path / "a")])
        main(args + ["--out", str(tmp_path / "b")])
        a = (tmp_path / "a" / "srel.csv").read_bytes()
        b = (tmp_path / "b" / "srel.csv").read_bytes()
        assert a == b

    def test_theorem42_small(self, tmp_path):
        rc = main([
            "experiment", "theorem42", "--n", "2,4", "--trials", "20",
            "--out", str(tmp_path),
        ])
        assert rc == 0
        assert (tmp_path / "theorem42.csv").exists()

    def test_prop31_small(self, tmp_path):
        rc = main([
            "experiment", "prop31", "--n", "2,4", "--trials", "30",
            "--out", str(tmp_path),
        ])
        assert rc == 0

    def test_unknown_suite_exit_2(self, tmp_path, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["experiment", "nope", "--out", str(tmp_path)])
        assert exc.value.code == 2
        assert capsys.readouterr().err.splitlines()[0] == "E_USAGE"

    def test_missing_command_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2
