"""Command line surface: argument handling, exit codes, stderr diagnostics."""

from pathlib import Path

import pytest

from puzzlefigures.cli import EXIT_ERROR, EXIT_OK, main

FIXTURES = Path(__file__).parent / "fixtures"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestHappyPath:
    def test_hanoi_kind_writes_png(self, capsys, tmp_path):
        out = tmp_path / "hanoi.png"
        code, _, err = run_cli(
            capsys,
            "--csv", str(FIXTURES / "hanoi_sweep.csv"),
            "--kind", "hanoi_dual_axis",
            "--out", str(out),
        )
        assert code == EXIT_OK
        assert out.stat().st_size > 0
        assert str(out) in err

    def test_river_kind_writes_png(self, capsys, tmp_path):
        out = tmp_path / "river.png"
        code, _, _ = run_cli(
            capsys,
            "--csv", str(FIXTURES / "river_grid.csv"),
            "--kind", "river_grid",
            "--out", str(out),
        )
        assert code == EXIT_OK
        assert out.stat().st_size > 0

    def test_no_inset_and_dpi_flags(self, capsys, tmp_path):
        out = tmp_path / "flat.png"
        code, _, _ = run_cli(
            capsys,
            "--csv", str(FIXTURES / "hanoi_sweep.csv"),
            "--kind", "hanoi_dual_axis",
            "--out", str(out),
            "--no-inset",
            "--dpi", "72",
        )
        assert code == EXIT_OK
        assert out.stat().st_size > 0

    def test_svg_output_by_extension(self, capsys, tmp_path):
        out = tmp_path / "hanoi.svg"
        code, _, _ = run_cli(
            capsys,
            "--csv", str(FIXTURES / "hanoi_sweep.csv"),
            "--kind", "hanoi_dual_axis",
            "--out", str(out),
        )
        assert code == EXIT_OK
        assert out.read_bytes().lstrip().startswith(b"<?xml")


class TestFailures:
    def test_missing_csv_file(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys,
            "--csv", str(tmp_path / "absent.csv"),
            "--kind", "hanoi_dual_axis",
            "--out", str(tmp_path / "x.png"),
        )
        assert code == EXIT_ERROR
        assert "error:" in err
        assert "absent.csv" in err

    def test_missing_column_is_named_on_stderr(self, capsys, tmp_path):
        source = (FIXTURES / "hanoi_sweep.csv").read_text().splitlines()
        drop = source[1].split(",").index("success_rate")
        stripped = [
            ",".join(cell for i, cell in enumerate(row.split(",")) if i != drop)
            for row in source[1:]
        ]
        broken = tmp_path / "broken.csv"
        broken.write_text("\n".join(stripped) + "\n")
        code, _, err = run_cli(
            capsys,
            "--csv", str(broken),
            "--kind", "hanoi_dual_axis",
            "--out", str(tmp_path / "x.png"),
        )
        assert code == EXIT_ERROR
        assert "success_rate" in err

    def test_wrong_puzzle_for_kind(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys,
            "--csv", str(FIXTURES / "river_grid.csv"),
            "--kind", "hanoi_dual_axis",
            "--out", str(tmp_path / "x.png"),
        )
        assert code == EXIT_ERROR
        assert "no hanoi rows" in err

    def test_unknown_kind_is_an_argparse_error(self, capsys, tmp_path):
        with pytest.raises(SystemExit) as excinfo:
            main([
                "--csv", str(FIXTURES / "hanoi_sweep.csv"),
                "--kind", "scatter",
                "--out", str(tmp_path / "x.png"),
            ])
        assert excinfo.value.code == 2
        assert "invalid choice" in capsys.readouterr().err

    def test_out_is_required(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["--csv", str(FIXTURES / "hanoi_sweep.csv"), "--kind", "river_grid"])
        assert excinfo.value.code == 2
