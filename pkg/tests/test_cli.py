import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rzero.cli import (
    EXIT_CLUSTERS,
    EXIT_EVAL_FAIL,
    EXIT_OK,
    EXIT_VALIDATE_FAIL,
    RunConfig,
    ZERO_COLUMNS,
    emit_rows,
    main,
    parse_complex,
    parse_rows,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParsing:
    def test_parse_complex_j(self):
        assert parse_complex("0.5+25j") == 0.5 + 25j

    def test_parse_complex_i(self):
        assert parse_complex("2 + 30i") == 2 + 30j

    def test_malformed(self):
        with pytest.raises(ValueError):
            parse_complex("banana")


class TestEval:
    def test_single_point_in_band(self, capsys):
        code, out, _ = run(capsys, "--command", "eval", "--point", "2+10j")
        assert code == EXIT_OK
        rows = parse_rows(out)
        assert len(rows) == 1
        value = complex(float(rows[0]["re"]), float(rows[0]["im"]))
        assert abs(value - 1.0) <= 0.75

    def test_malformed_point(self, capsys):
        code, _, err = run(capsys, "--command", "eval", "--point", "nope")
        assert code == EXIT_EVAL_FAIL
        assert "bad arguments" in err

    def test_missing_point(self, capsys):
        code, _, err = run(capsys, "--command", "eval")
        assert code == EXIT_EVAL_FAIL

    def test_compensated_precision(self, capsys):
        code, out, _ = run(capsys, "--command", "eval", "--point", "0.5+75j",
                           "--precision", "comp")
        assert code == EXIT_OK
        row = parse_rows(out)[0]
        assert abs(complex(float(row["re"]), float(row["im"]))) > 0.0

    def test_grid_deterministic_order(self, capsys):
        argv = ["--command", "eval", "--point", "2+30j", "--grid-n", "3",
                "--grid-step", "0.5"]
        code, out, _ = run(capsys, *argv)
        assert code == EXIT_OK
        rows = parse_rows(out)
        assert len(rows) == 9
        keys = [(float(r["t"]), float(r["sigma"])) for r in rows]
        assert keys == sorted(keys)
        code2, out2, _ = run(capsys, *argv)
        assert out2 == out


class TestCount:
    def test_grid_rows_nondecreasing(self, capsys):
        code, out, _ = run(capsys, "--command", "count", "--t-min", "20",
                           "--t-max", "60", "--t-step", "20")
        assert code == EXIT_OK
        rows = parse_rows(out)
        assert [float(r["big_t"]) for r in rows] == [20.0, 40.0, 60.0]
        counts = [int(r["count"]) for r in rows]
        assert counts == sorted(counts)

    def test_count_matches_zeros_listing(self, capsys):
        code, out, _ = run(capsys, "--command", "count", "--t-min", "60",
                           "--t-max", "60", "--t-step", "10")
        rows = parse_rows(out)
        n_count = int(rows[0]["count"])
        code, out, _ = run(capsys, "--command", "zeros", "--t-min", "10",
                           "--t-max", "60")
        zs = parse_rows(out)
        assert code == EXIT_OK
        assert n_count == len(zs)

    def test_empty_grid(self, capsys):
        code, _, err = run(capsys, "--command", "count", "--t-min", "5",
                           "--t-max", "9", "--t-step", "1")
        assert code == EXIT_EVAL_FAIL


class TestZerosCommand:
    def test_schema_and_footer(self, capsys):
        code, out, _ = run(capsys, "--command", "zeros", "--t-min", "10",
                           "--t-max", "40", "--box-left", "-4")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "# rzero v1"
        assert lines[1].split(",") == ZERO_COLUMNS
        rows = parse_rows(out)
        assert len(rows) == 2
        gammas = [float(r["gamma"]) for r in rows]
        assert gammas == sorted(gammas)
        assert any("fraction_beta_gt_half" in ln for ln in lines)

    def test_json_mirrors_csv(self, capsys):
        code, out, _ = run(capsys, "--command", "zeros", "--t-min", "10",
                           "--t-max", "40", "--box-left", "-4",
                           "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["columns"] == ZERO_COLUMNS
        assert len(doc["rows"]) == 2
        assert doc["rows"][0]["winding_certificate"] == 1


class TestTable:
    def test_sqrt_columns(self, capsys):
        code, out, _ = run(capsys, "--command", "table", "--t-min", "30",
                           "--t-max", "60", "--t-step", "30")
        assert code == EXIT_OK
        rows = parse_rows(out)
        for r in rows:
            r_smooth = float(r["r_smooth"])
            assert float(r["r_plus_sqrt"]) == pytest.approx(
                r_smooth + float(r["sqrt_term"]), rel=1e-12)
            assert float(r["residual"]) == pytest.approx(
                int(r["count"]) - float(r["main_value"]), abs=1e-9)
        assert "sqrt_fit_coefficient" in out


class TestValidate:
    ARGS = ("--command", "validate", "--samples", "30", "--seed", "11")

    def test_all_suites_listed(self, capsys):
        code, out, _ = run(capsys, *self.ARGS)
        assert code == EXIT_OK
        for name in ("identity", "functional_equation", "eta_branch",
                     "backlund", "left_region_surrogate"):
            assert name in out
        assert out.count("PASS") == 5

    def test_seeded_determinism(self, capsys):
        _, out1, _ = run(capsys, *self.ARGS)
        _, out2, _ = run(capsys, *self.ARGS)
        assert out1 == out2

    def test_tightened_tolerance_fails(self, capsys):
        code, out, err = run(capsys, "--command", "validate", "--samples",
                             "30", "--seed", "11", "--tol", "1e-15")
        assert code == EXIT_VALIDATE_FAIL
        assert "FAIL" in out
        assert "failed suites" in err


class TestRoundTrip:
    def test_emitted_csv_parses_back(self, tmp_path, capsys):
        out_path = tmp_path / "zeros.csv"
        code, _, _ = run(capsys, "--command", "zeros", "--t-min", "10",
                         "--t-max", "40", "--box-left", "-4",
                         "--out", str(out_path))
        assert code == EXIT_OK
        text = out_path.read_text()
        rows = parse_rows(text)
        assert len(rows) == 2
        # 17 significant digits round-trip binary64 exactly
        beta = float(rows[0]["beta"])
        assert beta == pytest.approx(-1.5728670009776071, abs=1e-12)

    @given(st.lists(
        st.floats(allow_nan=False, allow_infinity=False, width=64),
        min_size=1, max_size=8))
    def test_float_round_trip(self, values):
        rows = [{"x": v} for v in values]
        config = RunConfig(command="eval", output_format="csv",
                           output_path=None)
        import io
        import contextlib
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            text = emit_rows(rows, ["x"], config)
        parsed = parse_rows(text)
        assert [float(r["x"]) for r in parsed] == values

    def test_json_round_trip(self, tmp_path, capsys):
        out_path = tmp_path / "table.json"
        code, _, _ = run(capsys, "--command", "count", "--t-min", "30",
                         "--t-max", "30", "--t-step", "10",
                         "--format", "json", "--out", str(out_path))
        assert code == EXIT_OK
        doc = json.loads(out_path.read_text())
        row = doc["rows"][0]
        assert row["count"] == 1
        assert row["smooth_term"] == pytest.approx(
            row["main_value"] + row["sqrt_term"], rel=1e-15)


class TestConfig:
    def test_ordering_validated(self):
        with pytest.raises(ValueError):
            RunConfig(command="count", t_min=50.0, t_max=10.0)

    def test_format_validated(self):
        with pytest.raises(ValueError):
            RunConfig(command="count", output_format="xml")

    def test_finite_validated(self):
        with pytest.raises(ValueError):
            RunConfig(command="count", box_left=float("inf"))

    def test_precision_mode_mapping(self):
        assert RunConfig(command="eval").precision_mode == "standard"
        assert RunConfig(command="eval",
                         precision="comp").precision_mode == "compensated"
