"""Tests for the command-line interface."""

import dataclasses
import io
import json
import shutil
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout

import pytest

import wwords.verify
from wwords import (
    MatrixGap,
    TruncatedSeries,
    build_preset,
    enumerate_series,
    identity_case,
    list_partitions,
    product_expand,
)
from wwords.cli import main
from wwords.recurrence import builtin_equation

B2_MATRIX = {
    "a": {"a": 4, "b": 1, "c": 3, "d": 2},
    "b": {"a": 3, "b": 0, "c": 2, "d": 1},
    "c": {"a": 1, "b": 2, "c": 0, "d": 3},
    "d": {"a": 2, "b": 3, "c": 1, "d": 4},
}


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def run_json(argv):
    code, out, err = run(["--format", "json", *argv])
    return code, json.loads(out), err


# ---------------------------------------------------------------------------
# list-presets
# ---------------------------------------------------------------------------


class TestListPresets:
    def test_text_lists_systems_and_identities(self):
        code, out, err = run(["list-presets"])
        assert code == 0
        assert "schur-weighted" in out
        assert "theorem-2" in out
        assert out.index("systems:") < out.index("identities:")

    def test_json_document(self):
        code, doc, _ = run_json(["list-presets"])
        assert code == 0
        assert set(doc) == {"presets", "identities"}
        assert "primc-weighted" in doc["presets"]
        assert "theorem-8-r3" in doc["identities"]


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


class TestVerify:
    def test_verified_identity_exits_zero(self):
        code, doc, _ = run_json(["verify", "theorem-2", "--qmax", "12"])
        assert code == 0
        assert doc["equal"] is True
        assert doc["first_mismatch"] is None
        assert doc["qmax"] == 12
        # timing is omitted so JSON output is reproducible byte for byte
        assert set(doc) == {"identity", "qmax", "degmax", "engines", "equal",
                            "first_mismatch", "conventions"}

    def test_text_and_json_verdicts_agree(self):
        code_t, out_t, _ = run(["verify", "theorem-2", "--qmax", "12"])
        code_j, doc, _ = run_json(["verify", "theorem-2", "--qmax", "12"])
        assert code_t == code_j == 0
        assert "equal: yes" in out_t
        assert "elapsed-ms:" in out_t
        assert doc["equal"] is True

    def test_json_runs_are_byte_identical(self):
        argv = ["--format", "json", "verify", "theorem-2", "--qmax", "10"]
        outs = [run(argv)[1] for _ in range(2)]
        assert outs[0] == outs[1]

    def test_engine_subset_is_respected(self):
        code, doc, _ = run_json(["verify", "theorem-2", "--qmax", "10",
                                 "--engines", "enum,product"])
        assert code == 0
        assert doc["engines"] == ["enum", "product"]

    def test_corrupted_gap_matrix_reports_mismatch(self, monkeypatch):
        pristine = wwords.verify.build_preset

        def corrupted(name, r=None):
            system = pristine(name) if r is None else pristine(name, r)
            if name != "schur-weighted":
                return system
            rows = {rk: dict(cols) for rk, cols in system.gap.rows.items()}
            first_row = next(iter(rows))
            first_col = next(iter(rows[first_row]))
            rows[first_row][first_col] += 1
            return dataclasses.replace(
                system, gap=MatrixGap(rows, system.gap.class_modulus,
                                      system.gap.overline_extra))

        monkeypatch.setattr(wwords.verify, "build_preset", corrupted)
        code, doc, _ = run_json(["verify", "theorem-2", "--qmax", "12"])
        assert code == 1
        assert doc["equal"] is False
        mismatch = doc["first_mismatch"]
        assert mismatch is not None
        assert set(mismatch) == {"n", "monomial", "lhs", "rhs"}
        # the report is still emitted in text mode too
        code_t, out_t, _ = run(["verify", "theorem-2", "--qmax", "12"])
        assert code_t == 1
        assert "equal: no" in out_t
        assert "first mismatch" in out_t

    def test_unknown_identity_is_usage_error(self):
        code, out, err = run(["--format", "json", "verify", "no-such"])
        assert code == 2
        assert "unknown identity" in err
        assert "usage:" in err
        assert json.loads(out) == {"error": err.splitlines()[0][len("error: "):]}

    def test_inapplicable_engine_is_engine_error(self):
        code, out, err = run(["verify", "theorem-2", "--engines", "dilation"])
        assert code == 2
        assert "not applicable" in err
        assert out == ""

    def test_unknown_flag_is_usage_error(self):
        code, out, err = run(["verify", "theorem-2", "--bogus"])
        assert code == 2
        assert "usage:" in err

    def test_statistics_check_uses_seed(self):
        argv = ["--format", "json", "--seed", "11", "verify", "theorem-4",
                "--qmax", "24", "--statistics", "--samples", "25"]
        code, out, _ = run(argv)
        doc = json.loads(out)
        assert code == 0
        assert doc["statistics"]["ok"] is True
        assert doc["statistics"]["seed"] == 11
        assert doc["statistics"]["samples"] == 25
        assert run(argv)[1] == out  # reproducible with the same seed

    def test_statistics_unavailable_is_engine_error(self):
        code, _, err = run(["verify", "theorem-2", "--qmax", "10",
                            "--statistics"])
        assert code == 2
        assert "statistic" in err


# ---------------------------------------------------------------------------
# expand
# ---------------------------------------------------------------------------


class TestExpand:
    def test_expand_known_product(self):
        code, doc, _ = run_json(["expand", "--product", "theorem-2",
                                 "--qmax", "6"])
        assert code == 0
        expected = product_expand(identity_case("theorem-2").product, 6)
        assert TruncatedSeries.from_json(doc["series"]) == expected
        assert doc["table"][1]["coefficient"] == "a + b"

    def test_expand_text_table(self):
        code, out, _ = run(["expand", "--product", "theorem-2", "--qmax", "3"])
        assert code == 0
        assert "q^0 : 1" in out
        assert "q^1 : a + b" in out

    def test_expand_product_file(self, tmp_path):
        path = tmp_path / "product.json"
        path.write_text(json.dumps(identity_case("theorem-2").product.to_json()))
        code_file, doc_file, _ = run_json(["expand", "--product", str(path),
                                           "--qmax", "8"])
        code_name, doc_name, _ = run_json(["expand", "--product", "theorem-2",
                                           "--qmax", "8"])
        assert code_file == code_name == 0
        assert doc_file["table"] == doc_name["table"]

    def test_unknown_product_source(self):
        code, _, err = run(["expand", "--product", "no-such", "--qmax", "5"])
        assert code == 2
        assert "unknown product" in err

    def test_identity_without_product_rejected(self):
        code, _, err = run(["expand", "--product", "theorem-1", "--qmax", "5"])
        assert code == 2
        assert "no product side" in err


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------


class TestEnumerate:
    def test_series_matches_library(self):
        code, doc, _ = run_json(["enumerate", "schur-weighted", "--qmax", "8"])
        assert code == 0
        expected = enumerate_series(build_preset("schur-weighted"), 8)
        assert TruncatedSeries.from_json(doc["series"]) == expected

    def test_list_partitions(self):
        code, doc, _ = run_json(["enumerate", "schur-weighted", "--list", "4"])
        assert code == 0
        expected = list_partitions(build_preset("schur-weighted"), 4)
        assert doc["count"] == len(expected) == 9
        assert doc["partitions"][0] == [str(p) for p in expected[0]]

    def test_list_zero_size_text(self):
        code, out, _ = run(["enumerate", "schur-weighted", "--list", "0"])
        assert code == 0
        assert "(empty)" in out

    def test_system_file_round_trip(self, tmp_path):
        path = tmp_path / "system.json"
        path.write_text(json.dumps(build_preset("schur-weighted").to_json()))
        code_a, doc_a, _ = run_json(["enumerate", str(path), "--qmax", "6"])
        code_b, doc_b, _ = run_json(["enumerate", "schur-weighted",
                                     "--qmax", "6"])
        assert code_a == code_b == 0
        assert doc_a == doc_b

    def test_parametric_preset(self):
        code, doc, _ = run_json(["enumerate", "primary-overpartitions(1)",
                                 "--qmax", "5", "--degmax", "4"])
        assert code == 0
        assert doc["system"] == "primary-overpartitions-r1"

    def test_unknown_system(self):
        code, _, err = run(["enumerate", "no-such", "--qmax", "5"])
        assert code == 2
        assert "unknown system" in err
        assert "schur-weighted" in err  # usage lists the presets

    def test_max_nodes_env_bound(self, monkeypatch):
        monkeypatch.setenv("WWORDS_MAX_NODES", "5")
        code, _, err = run(["enumerate", "schur-weighted", "--qmax", "20"])
        assert code == 2
        assert "5" in err
        monkeypatch.setenv("WWORDS_MAX_NODES", "grit")
        code, _, err = run(["enumerate", "schur-weighted", "--qmax", "6"])
        assert code == 2
        assert "integer" in err
        monkeypatch.setenv("WWORDS_MAX_NODES", "-3")
        code, _, err = run(["enumerate", "schur-weighted", "--qmax", "6"])
        assert code == 2
        assert "positive" in err


# ---------------------------------------------------------------------------
# dilate
# ---------------------------------------------------------------------------


class TestDilate:
    def test_crystal_dilation_prints_expected_matrix(self):
        code, doc, _ = run_json([
            "dilate", "primc-weighted", "--modulus", "2",
            "--offsets", '{"a": -1, "b": 0, "c": 0, "d": 1}'])
        assert code == 0
        assert doc["dilated"]["gap"]["rows"] == B2_MATRIX

    def test_text_matrix_rows(self):
        code, out, _ = run([
            "dilate", "primc-weighted", "--modulus", "2",
            "--offsets", '{"a": -1, "b": 0, "c": 0, "d": 1}'])
        assert code == 0
        rows = {}
        in_matrix = False
        for line in out.splitlines():
            if line.strip() == "gap matrix:":
                in_matrix = True
                continue
            if in_matrix and line.strip():
                cells = line.split()
                if cells[0] in B2_MATRIX and len(cells) == 5:
                    rows[cells[0]] = [int(c) for c in cells[1:]]
        assert rows == {
            "a": [4, 1, 3, 2], "b": [3, 0, 2, 1],
            "c": [1, 2, 0, 3], "d": [2, 3, 1, 4]}

    def test_bad_offsets_json(self):
        code, _, err = run(["dilate", "schur-weighted", "--modulus", "3",
                            "--offsets", "{bad"])
        assert code == 2
        assert "not valid JSON" in err

    def test_offsets_must_be_integer_map(self):
        code, _, err = run(["dilate", "schur-weighted", "--modulus", "3",
                            "--offsets", '{"a": 0.5}'])
        assert code == 2
        assert "integers" in err

    def test_inconsistent_dilation_is_engine_error(self):
        code, _, err = run(["dilate", "schur-weighted", "--modulus", "1",
                            "--offsets", '{"a": -9, "b": 0}'])
        assert code == 2
        assert "negative" in err


# ---------------------------------------------------------------------------
# check-eq
# ---------------------------------------------------------------------------


class TestCheckEq:
    def test_builtin_equation_holds(self):
        code, doc, _ = run_json(["check-eq", "schur-rec-a",
                                 "--kmax", "6", "--qmax", "15"])
        assert code == 0
        assert doc["holds"] is True
        assert doc["k_range"] == [1, 6]
        assert doc["failures"] == []

    def test_equation_file(self, tmp_path):
        path = tmp_path / "eq.json"
        path.write_text(json.dumps(builtin_equation("schur-rec-a").to_json()))
        code, doc, _ = run_json(["check-eq", str(path),
                                 "--kmax", "4", "--qmax", "12"])
        assert code == 0
        assert doc["holds"] is True

    def test_tampered_equation_fails_with_report(self, tmp_path):
        data = builtin_equation("schur-rec-a").to_json()
        data["rhs"] = data["rhs"][:1]  # drop a term: the identity now fails
        path = tmp_path / "broken.json"
        path.write_text(json.dumps(data))
        code, doc, _ = run_json(["check-eq", str(path),
                                 "--kmax", "4", "--qmax", "12"])
        assert code == 1
        assert doc["holds"] is False
        assert doc["failures"]

    def test_unknown_equation(self):
        code, _, err = run(["check-eq", "no-such", "--kmax", "3"])
        assert code == 2
        assert "unknown equation" in err
        assert "schur-rec-a" in err


# ---------------------------------------------------------------------------
# discover
# ---------------------------------------------------------------------------


class TestDiscover:
    def test_reports_product_like_candidates(self):
        code, doc, _ = run_json(["discover", "schur-dilated-mod3",
                                 "--primaries", "a,b", "--qmax", "18",
                                 "--top", "3"])
        assert code == 0
        assert doc["candidates_total"] == 9
        assert doc["product_like_total"] == 1
        top = doc["candidates"][0]
        assert top["substitution"] == {"c": {"a": 1, "b": 1}}
        assert top["period"] == 6
        assert len(doc["candidates"]) == 3

    def test_discover_is_byte_reproducible(self):
        argv = ["--format", "json", "discover", "schur-dilated-mod3",
                "--primaries", "a,b", "--qmax", "12", "--max-exponent", "1"]
        assert run(argv)[1] == run(argv)[1]

    def test_oversized_search_is_engine_error(self):
        code, _, err = run(["discover", "siladic-dilated-free",
                            "--primaries", "a,b", "--qmax", "24",
                            "--max-exponent", "3"])
        assert code == 2
        assert "exceeds" in err

    def test_empty_primaries_rejected(self):
        code, _, err = run(["discover", "schur-dilated-mod3",
                            "--primaries", " , ", "--qmax", "12"])
        assert code == 2
        assert "--primaries" in err


# ---------------------------------------------------------------------------
# euler-factor
# ---------------------------------------------------------------------------


class TestEulerFactor:
    def test_factorizes_series_file(self, tmp_path):
        f = product_expand(identity_case("theorem-2").product, 12)
        path = tmp_path / "series.json"
        path.write_text(json.dumps(f.to_json()))
        code, doc, _ = run_json(["euler-factor", "--series", str(path)])
        assert code == 0
        assert doc["factors"][0] == {"monomial": {"a": 1}, "n": 1, "exponent": 1}
        assert doc["pattern"]["period"] == 2

    def test_accepts_expand_document(self, tmp_path):
        _, expand_out, _ = run(["--format", "json", "expand",
                                "--product", "theorem-2", "--qmax", "10"])
        path = tmp_path / "expanded.json"
        path.write_text(expand_out)
        code, doc, _ = run_json(["euler-factor", "--series", str(path)])
        assert code == 0
        assert doc["pattern"]["period"] == 2

    def test_non_unit_constant_is_engine_error(self, tmp_path):
        doubled = TruncatedSeries.one(6) + TruncatedSeries.one(6)
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doubled.to_json()))
        code, _, err = run(["euler-factor", "--series", str(path)])
        assert code == 2
        assert "constant" in err

    def test_missing_file(self):
        code, _, err = run(["euler-factor", "--series", "/no/such/file.json"])
        assert code == 2
        assert "cannot read" in err

    def test_malformed_series_file(self, tmp_path):
        path = tmp_path / "junk.json"
        path.write_text('{"nope": 1}')
        code, _, err = run(["euler-factor", "--series", str(path)])
        assert code == 2
        assert "coefficients" in err


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------


class TestEntryPoints:
    def test_help_exits_zero(self):
        code, out, _ = run(["--help"])
        assert code == 0

    def test_module_is_runnable(self):
        proc = subprocess.run(
            [sys.executable, "-m", "wwords.cli", "list-presets"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert "schur-weighted" in proc.stdout

    def test_console_script_installed(self):
        exe = shutil.which("wwords")
        assert exe, "console script 'wwords' not on PATH"
        proc = subprocess.run([exe, "--format", "json", "list-presets"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert "presets" in json.loads(proc.stdout)
