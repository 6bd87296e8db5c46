"""
Drive the `brauer` command end to end: arguments in, JSON/TSV out, exit codes.
"""
import io
import json
import sys
from pathlib import Path
from unittest.mock import patch

import pytest

root_dir = Path(__file__).resolve().parent.parent.parent
if str(root_dir) not in sys.path:
    sys.path.append(str(root_dir))

from app.cli.main import main

D1 = [[-1, 3], [-2, -4], [-3, -5], [1, 5], [2, 4]]
D2 = [[-1, -4], [-2, -5], [-3, 1], [2, 5], [3, 4]]


def run(argv, stdin_text=""):
    out = io.StringIO()
    code = main(argv, stdin=io.StringIO(stdin_text), stdout=out)
    return code, out.getvalue()


def element(n, pairs, coeff="1"):
    return {"n": n, "terms": [{"pairs": pairs, "coeff": coeff}]}


class TestMulCommand:
    def test_worked_product_from_stdin(self):
        """
        GIVEN the two five-strand diagrams as a JSON list on stdin
        WHEN `brauer mul --delta 3` runs
        THEN the product is the composed diagram with the closed loop as a factor 3.
        """
        code, out = run(["mul", "--delta", "3"], json.dumps([element(5, D1), element(5, D2)]))
        assert code == 0
        payload = json.loads(out)
        assert payload["delta"] == "3"
        assert len(payload["terms"]) == 1
        term = payload["terms"][0]
        assert term["coeff"] == "3"
        assert {frozenset(p) for p in term["pairs"]} == {
            frozenset(p) for p in [[-1, 1], [-2, -4], [-3, -5], [2, 5], [3, 4]]
        }

    def test_files_and_declared_ring(self, tmp_path):
        # 1. Setup
        u = {"n": 2, "ring": "Z", "delta": "2", "terms": [{"pairs": [[-1, -2], [1, 2]], "coeff": "1"}]}
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        first.write_text(json.dumps(u))
        second.write_text(json.dumps(u))

        # 2. Action
        code, out = run(["mul", str(first), str(second)])

        # 3. Assert: U^2 = delta U
        assert code == 0
        assert json.loads(out)["terms"][0]["coeff"] == "2"

    def test_strand_mismatch(self):
        code, _ = run(["mul"], json.dumps([element(2, [[-1, 1], [-2, 2]]), element(3, [[-1, 1], [-2, 2], [-3, 3]])]))
        assert code == 3

    def test_conflicting_rings(self):
        a = dict(element(2, [[-1, 1], [-2, 2]]), ring="Z", delta="0")
        b = dict(element(2, [[-1, 1], [-2, 2]]), ring="Q", delta="1")
        code, _ = run(["mul"], json.dumps([a, b]))
        assert code == 3

    def test_bad_json(self):
        code, _ = run(["mul"], "{not json")
        assert code == 2

    def test_missing_file(self, tmp_path):
        code, _ = run(["mul", str(tmp_path / "absent.json")])
        assert code == 2

    def test_tsv(self):
        code, out = run(["mul", "--output", "tsv"], json.dumps(element(2, [[-1, 1], [-2, 2]], "5")))
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "coeff\tpairs"
        assert lines[1].startswith("5\t")


class TestTorCommand:
    def test_brauer_two_strands(self):
        """
        GIVEN Br_2 over Z with delta = 0
        WHEN `brauer tor --algebra brauer --n 2` runs
        THEN Tor_0 = Z and Tor_1 = Z + Z/2.
        """
        code, out = run(["tor", "--algebra", "brauer", "--n", "2"])
        assert code == 0
        assert json.loads(out) == [
            {"degree": 0, "free_rank": 1, "torsion": []},
            {"degree": 1, "free_rank": 1, "torsion": ["2"]},
        ]

    def test_symmetric_group(self):
        code, out = run(["tor", "--algebra", "sym", "--n", "3"])
        assert code == 0
        rows = json.loads(out)
        assert rows[1] == {"degree": 1, "free_rank": 0, "torsion": ["2"]}

    def test_induced_module_needs_m(self):
        code, _ = run(["tor", "--algebra", "brauer", "--n", "2", "--module", "induced"])
        assert code == 2

    def test_tsv_header(self):
        code, out = run(["tor", "--algebra", "brauer", "--n", "2", "--output", "tsv"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "degree\tfree_rank\ttorsion"
        assert lines[2] == "1\t1\t2"

    def test_budget_exceeded(self):
        code, out = run(["tor", "--algebra", "brauer", "--n", "2", "--budget", "1"])
        assert code == 4
        assert out == ""

    @pytest.mark.parametrize("argv", [
        ["tor", "--algebra", "brauer", "--n", "2", "--ring", "R"],
        ["tor", "--algebra", "brauer", "--n", "-1"],
        ["tor", "--algebra", "octonion", "--n", "2"],
    ])
    def test_parse_errors(self, argv):
        code, _ = run(argv)
        assert code == 2

    def test_deterministic_output(self):
        argv = ["tor", "--algebra", "brauer", "--n", "2", "--delta", "3", "--maxdeg", "3"]
        assert run(argv) == run(argv)


class TestHomologyCommand:
    def test_cn(self):
        code, out = run(["homology", "--target", "cn", "--n", "2"])
        assert code == 0
        assert [row["degree"] for row in json.loads(out)] == [-1, 0, 1]

    def test_words(self):
        code, out = run(["homology", "--target", "w", "--letters", "4", "--seps", "2"])
        assert code == 0
        rows = json.loads(out)
        assert all(row["free_rank"] == 0 and not row["torsion"] for row in rows if row["degree"] <= 2)

    def test_inductive(self):
        code, _ = run(["homology", "--target", "inductive", "--n", "3", "--X", "1,2", "--x", "1",
                       "--ring", "Q", "--delta", "1", "--maxdeg", "3"])
        assert code == 0

    def test_missing_arguments(self):
        code, _ = run(["homology", "--target", "cnk", "--n", "3"])
        assert code == 2

    def test_too_many_letters(self):
        code, _ = run(["homology", "--target", "w", "--letters", "9", "--seps", "0"])
        assert code == 3

    def test_export(self, tmp_path):
        # 1. Setup
        target = tmp_path / "c3.json"

        # 2. Action
        code, _ = run(["homology", "--target", "cn", "--n", "3", "--export", str(target)])

        # 3. Assert
        assert code == 0
        payload = json.loads(target.read_text())
        assert payload["name"] == "C_3"
        assert payload["ranks"] == {"-1": 1, "0": 6, "1": 15, "2": 15}

    def test_nonzero_homology_in_vanishing_range(self):
        with patch("app.cli.main.vanishing_failures", return_value=[0]):
            code, _ = run(["homology", "--target", "cn", "--n", "3"])
        assert code == 5


class TestVerifyCommand:
    def test_relations(self):
        code, out = run(["verify", "relations", "--n", "3"])
        assert code == 0
        rows = json.loads(out)
        assert {row["suite"] for row in rows} == {"relations"}
        assert all(row["passed"] for row in rows)

    def test_br2(self):
        code, out = run(["verify", "br2"])
        assert code == 0
        assert any(row["check"].startswith("golden") for row in json.loads(out))

    def test_failure_exit_code(self, tmp_path):
        fake = tmp_path / "br2.json"
        fake.write_text(json.dumps({
            "params": {"ring": "Z", "deltas": [0, 2, 3, 5]},
            "rows": [{"check": "Tor^Br_2(t,t)", "instance": "Z[delta=0], i=1", "computed": "Z"}],
        }))
        with patch("app.services.verify_service.get_golden_path", return_value=fake):
            code, _ = run(["verify", "br2"])
        assert code == 5

    def test_unknown_suite(self):
        code, _ = run(["verify", "thmZ"])
        assert code == 2

    def test_semantic_error(self):
        code, _ = run(["verify", "relations", "--n", "7"])
        assert code == 3


class TestSuiteAliases:
    @pytest.mark.parametrize("argv, canonical", [
        (["verify", "thmA", "--n", "2", "--maxdeg", "2"], "inverse_iso"),
        (["verify", "thmB", "--n", "3", "--i", "1", "--ring", "Z", "--delta", "0"], "range_iso"),
        (["verify", "thm41", "--n", "2", "--m", "1", "--maxdeg", "2"], "induced"),
        (["verify", "thm31", "--n", "2", "--maxdeg", "2"], "quotients"),
        (["verify", "surjection63", "--n", "3", "--i", "1", "--delta", "0"], "surjection"),
    ])
    def test_contract_names_run(self, argv, canonical):
        """
        GIVEN a suite named by its command-line contract name
        WHEN `brauer verify` runs it
        THEN the descriptive suite runs, every row passes and the exit code is 0.
        """
        code, out = run(argv)
        assert code == 0
        rows = json.loads(out)
        assert rows
        assert {row["suite"] for row in rows} == {canonical}
        assert all(row["passed"] for row in rows)

    @pytest.mark.parametrize("argv", [
        ["verify", "thmB", "--n", "3", "--i", "1", "--ring", "Z", "--delta", "0"],
        ["verify", "surjection63", "--n", "3", "--i", "1", "--delta", "0"],
    ])
    def test_recorded_parameters_keep_the_golden_comparison(self, argv):
        code, out = run(argv)
        assert code == 0
        assert any(row["check"].startswith("golden") for row in json.loads(out))

    def test_alias_and_descriptive_name_agree(self):
        _, by_alias = run(["verify", "surjection63"])
        _, by_name = run(["verify", "surjection"])
        assert json.loads(by_alias) == json.loads(by_name)
