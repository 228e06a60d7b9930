import json
import pathlib

import pytest

import omlprob as q
from omlprob import files
from omlprob.cli import main
from omlprob.errors import ParseError, SchemaError

from conftest import DATA

GOLDEN = pathlib.Path(__file__).resolve().parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestFileLoading:
    def test_lattice_file(self):
        L = files.load_lattice(files.load_document(str(DATA / "mo2_lattice.json")))
        assert set(L.labels) == {"0", "1", "a", "a'", "b", "b'"}

    def test_tables_resolve_lattice_reference(self):
        f = files.load_conditional_state(
            files.load_document(str(DATA / "two_blocks_f.json"))
        )
        L = f.lattice
        assert f(L.id_of("b"), L.id_of("a'")) == q.validate_smap(
            L, q.conditional_to_smap(f).table
        )(L.id_of("b"), L.id_of("a'")) / q.nu_state(q.conditional_to_smap(f))(
            L.id_of("a'")
        )

    def test_decimal_literals_parse_exactly(self, tmp_path, mo2):
        doc = {
            "type": "state",
            "values": {"0": 0, "1": 1, "a": 0.4, "a'": 0.6, "b": "3/10", "b'": 0.7},
        }
        path = tmp_path / "state.json"
        path.write_text(json.dumps(doc))
        m = files.load_state(files.load_document(str(path)), mo2)
        from fractions import Fraction

        assert m(mo2.id_of("a")) == Fraction(2, 5)

    def test_unknown_fields_rejected(self, tmp_path):
        doc = json.loads((DATA / "mo2_lattice.json").read_text())
        doc["extra"] = 1
        path = tmp_path / "lat.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(SchemaError):
            files.load_lattice(files.load_document(str(path)))

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ParseError):
            files.load_document(str(path))

    def test_documents_round_trip(self, tmp_path, example_f, example_smap):
        fdoc = files.conditional_state_document(example_f)
        fdoc["lattice"] = files.lattice_document(example_f.lattice)
        path = tmp_path / "f.json"
        files.write_document(str(path), fdoc)
        f2 = files.load_conditional_state(files.load_document(str(path)))
        for c in example_f.conditions:
            for x in example_f.lattice.elements:
                lab = example_f.lattice.label
                assert f2(f2.lattice.id_of(lab(x)), f2.lattice.id_of(lab(c))) == example_f(x, c)


class TestValidateCommand:
    def test_examples_pass(self, capsys):
        code, out = run(
            capsys,
            "validate",
            str(DATA / "mo2_lattice.json"),
            str(DATA / "two_blocks_f.json"),
            str(DATA / "two_blocks_smap.json"),
        )
        assert code == 0
        assert "FAIL" not in out

    def test_o6_fails_with_witness(self, capsys):
        code, out = run(capsys, "validate", str(DATA / "o6_lattice.json"))
        assert code == 1
        assert "orthomodular" in out and "a ≤ b" in out

    def test_malformed_json_exits_2(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("[1,")
        code = main(["validate", str(path)])
        assert code == 2

    def test_corrupted_conditional_state(self, capsys, tmp_path):
        doc = json.loads((DATA / "two_blocks_f.json").read_text())
        doc["lattice"] = json.loads((DATA / "mo2_lattice.json").read_text())
        for row in doc["table"]:
            if row[0] == "b" and row[1] == "a":
                row[2] = "1/4"
            if row[0] == "b'" and row[1] == "a":
                row[2] = "3/4"
        path = tmp_path / "f.json"
        path.write_text(json.dumps(doc))
        code, out = run(capsys, "validate", str(path))
        assert code == 1
        assert "FAIL f.json:C3" in out

    def test_golden_report(self, capsys):
        code, out = run(
            capsys,
            "validate",
            str(DATA / "mo2_lattice.json"),
            str(DATA / "two_blocks_f.json"),
            str(DATA / "two_blocks_smap.json"),
            "--format",
            "json",
        )
        # Golden comparison is on the parsed document so key order is free.
        assert json.loads(out) == json.loads(
            (GOLDEN / "validate_examples.json").read_text()
        )

    def test_report_round_trips_through_schema(self, capsys):
        code, out = run(
            capsys, "validate", str(DATA / "mo2_lattice.json"), "--format", "json"
        )
        doc = json.loads(out)
        assert doc["schema_version"] == 1
        assert set(doc) == {"schema_version", "status", "checks", "values"}
        assert json.loads(json.dumps(doc)) == doc


class TestConvertCommand:
    def test_f_to_smap_matches_stored_table(self, capsys, tmp_path):
        out_path = tmp_path / "smap.json"
        code, _ = run(
            capsys, "convert", str(DATA / "two_blocks_f.json"), "-o", str(out_path)
        )
        assert code == 0
        got = json.loads(out_path.read_text())
        want = json.loads((DATA / "two_blocks_smap.json").read_text())
        assert got["table"] == want["table"]

    def test_round_trip_through_files(self, capsys, tmp_path, mo2):
        smap_out = tmp_path / "smap.json"
        f_out = tmp_path / "f.json"
        run(capsys, "convert", str(DATA / "two_blocks_f.json"), "-o", str(smap_out))
        code, _ = run(
            capsys,
            "convert",
            str(smap_out),
            "-o",
            str(f_out),
            "--lattice",
            str(DATA / "mo2_lattice.json"),
        )
        assert code == 0
        f = files.load_conditional_state(files.load_document(str(f_out)), mo2)
        orig = files.load_conditional_state(
            files.load_document(str(DATA / "two_blocks_f.json")), mo2
        )
        for c in orig.conditions:
            for x in mo2.elements:
                assert f(x, c) == orig(x, c)

    def test_invalid_input_surfaces_violation(self, capsys, tmp_path):
        doc = json.loads((DATA / "two_blocks_f.json").read_text())
        doc["lattice"] = json.loads((DATA / "mo2_lattice.json").read_text())
        for row in doc["table"]:
            if row[0] == "a" and row[1] == "a":
                row[2] = "9/10"
            if row[0] == "a'" and row[1] == "a":
                row[2] = "1/10"
        path = tmp_path / "f.json"
        path.write_text(json.dumps(doc))
        code, out = run(capsys, "convert", str(path), "-o", str(tmp_path / "o.json"))
        assert code == 1
        assert "C2Violation" in out


class TestIndepCommand:
    def test_pair_golden(self, capsys):
        code, out = run(
            capsys,
            "indep",
            str(DATA / "two_blocks_smap.json"),
            "--pair",
            "a",
            "b",
            "--format",
            "json",
        )
        assert code == 0
        assert json.loads(out) == json.loads((GOLDEN / "indep_pair_a_b.json").read_text())

    def test_reverse_pair_not_independent(self, capsys):
        code, out = run(
            capsys,
            "indep",
            str(DATA / "two_blocks_smap.json"),
            "--pair",
            "b",
            "a",
            "--format",
            "json",
        )
        assert json.loads(out)["values"]["independent"] is False

    def test_scan_golden(self, capsys):
        code, out = run(
            capsys,
            "indep",
            str(DATA / "two_blocks_smap.json"),
            "--scan",
            "--format",
            "json",
        )
        assert json.loads(out) == json.loads((GOLDEN / "indep_scan.json").read_text())

    def test_scan_on_boolean_random_smap(self, capsys, tmp_path):
        run(
            capsys,
            "gen",
            "--kind",
            "boolean",
            "--n",
            "3",
            "--seed",
            "11",
            "--emit",
            "lattice,smap",
            "-o",
            str(tmp_path),
        )
        code, out = run(
            capsys,
            "indep",
            str(tmp_path / "boolean3_smap.json"),
            "--scan",
            "--format",
            "json",
        )
        assert code == 0
        assert json.loads(out)["values"]["asymmetric_pairs"] == []


class TestCondexpCommand:
    def test_constant_solution_golden(self, capsys):
        code, out = run(
            capsys,
            "condexp",
            "--f",
            str(DATA / "two_blocks_f.json"),
            "--observable",
            str(DATA / "obs_x.json"),
            "--atom",
            "b",
            "--format",
            "json",
        )
        assert code == 0
        assert json.loads(out) == json.loads(
            (GOLDEN / "condexp_x_given_b.json").read_text()
        )

    def test_two_point_solution_golden(self, capsys):
        code, out = run(
            capsys,
            "condexp",
            "--f",
            str(DATA / "two_blocks_f.json"),
            "--observable",
            str(DATA / "obs_y.json"),
            "--atom",
            "a",
            "--format",
            "json",
        )
        assert code == 0
        assert json.loads(out) == json.loads(
            (GOLDEN / "condexp_y_given_a.json").read_text()
        )

    def test_constant_observable_is_fixed_point(self, capsys, tmp_path):
        doc = {
            "type": "observable",
            "lattice": "mo2_lattice.json",
            "assignment": [{"value": "5", "element": "1"}],
        }
        path = tmp_path / "const.json"
        path.write_text(json.dumps(doc))
        code, out = run(
            capsys,
            "condexp",
            "--f",
            str(DATA / "two_blocks_f.json"),
            "--observable",
            str(path),
            "--atom",
            "b",
            "--lattice",
            str(DATA / "mo2_lattice.json"),
            "--format",
            "json",
        )
        assert code == 0
        assert json.loads(out)["values"]["z"] == [["5", "1"]]


class TestGenCommand:
    def test_emitted_files_validate(self, capsys, tmp_path):
        code, _ = run(
            capsys,
            "gen",
            "--kind",
            "mo",
            "--n",
            "2",
            "--seed",
            "42",
            "--emit",
            "lattice,smap,conditional_state",
            "-o",
            str(tmp_path),
        )
        assert code == 0
        code, out = run(
            capsys,
            "validate",
            str(tmp_path / "mo2_lattice.json"),
            str(tmp_path / "mo2_smap.json"),
            str(tmp_path / "mo2_conditional_state.json"),
        )
        assert code == 0 and "FAIL" not in out

    def test_gen_deterministic(self, capsys, tmp_path):
        for sub in ("one", "two"):
            run(
                capsys,
                "gen",
                "--kind",
                "mo",
                "--n",
                "3",
                "--seed",
                "7",
                "--emit",
                "smap",
                "-o",
                str(tmp_path / sub),
            )
        assert (tmp_path / "one" / "mo3_smap.json").read_text() == (
            tmp_path / "two" / "mo3_smap.json"
        ).read_text()

    def test_o6_emits_raw_lattice_only(self, capsys, tmp_path):
        code, _ = run(capsys, "gen", "--kind", "o6", "-o", str(tmp_path))
        assert code == 0
        code, _ = run(capsys, "validate", str(tmp_path / "o6_lattice.json"))
        assert code == 1
