import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algd import cli
from algd.field import QQ
from algd.errors import ParseError, ShapeMismatch, UnknownReference

Z2 = {"type": "group", "table": [[0, 1], [1, 0]]}


def doc(objects=None, tasks=None, field=None):
    return json.dumps({"field": field or {"prime": 3}, "objects": objects or {}, "tasks": tasks or []}, indent=1)


def cyclic_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def run_main(capsysbinary, argv):
    code = cli.main(argv)
    return code, capsysbinary.readouterr()


class TestParse:
    def test_minimal_group_spec(self):
        spec = cli.parse_text(doc({"Z2": Z2}))
        assert spec.field.describe() and spec.order == ["Z2"] and spec.tasks == []

    def test_rational_field(self):
        spec = cli.parse_text(doc({"Z2": Z2}, field={"rational": True}))
        assert spec.field is QQ

    def test_wrong_arity_tensor(self):
        alg = {"type": "algebra", "unit": [1, 0], "mult": [[[1, 0], [0, 1]], [[0, 1]]]}
        with pytest.raises(ShapeMismatch) as exc:
            cli.parse_text(doc({"A": alg}))
        assert exc.value.witness["index"] == [1] and exc.value.witness["line"] is not None

    def test_scalar_where_matrix_expected(self):
        with pytest.raises(ShapeMismatch):
            cli.parse_text(doc({"G": {"type": "group", "table": [[0, 1], 1]}}))

    def test_action_shape_checked_against_referenced_objects(self):
        objs = {
            "Z2": Z2,
            "kZ2": {"type": "group_algebra", "group": "Z2"},
            "f": {"type": "function_algebra", "group": "Z2"},
            "act": {"type": "action", "hopf": "kZ2", "algebra": "f", "tensor": [[[1, 0], [0, 1]]]},
        }
        with pytest.raises(ShapeMismatch):
            cli.parse_text(doc(objs))

    def test_dangling_object_reference(self):
        with pytest.raises(UnknownReference) as exc:
            cli.parse_text(doc({"kZ2": {"type": "group_algebra", "group": "Z9"}}))
        assert exc.value.witness["ref"] == "Z9"

    def test_dangling_task_target(self):
        with pytest.raises(UnknownReference):
            cli.parse_text(doc({"Z2": Z2}, [{"op": "check", "target": "W"}]))

    def test_invalid_json_has_line_and_column(self):
        with pytest.raises(ParseError) as exc:
            cli.parse_text('{"field": {"prime": 3},\n "objects": {,}}')
        assert (exc.value.line, exc.value.column) == (2, 14)

    @pytest.mark.parametrize(
        "text",
        [
            "[]",
            json.dumps({"objects": {}}),
            doc(field={"prime": 4}),
            doc({"x": {"type": "manifold"}}),
            doc({"Z2": Z2}, [{"op": "frobnicate", "target": "Z2"}]),
            doc({"A": {"type": "algebra", "mult": []}}),
            doc({"Z2": Z2, "kZ2": {"type": "group_algebra", "group": "Z2"}, "W": {"type": "algebroid", "kind": "cm", "hopf": "kZ2"}}),
        ],
    )
    def test_malformed_documents(self, text):
        with pytest.raises(ParseError):
            cli.parse_text(text)

    def test_unknown_example(self):
        with pytest.raises(ParseError):
            cli.parse("example:no_such_thing")

    def test_bundled_examples_parse(self):
        names = cli.example_names()
        assert {"weyl_z2_f3", "corrupted_target", "transversal_z4", "bicharacter_f7", "groups"} <= set(names)
        for name in names:
            cli.parse(cli.EXAMPLE_PREFIX + name)


class TestRun:
    def test_empty_task_list_passes(self):
        d = cli.run(cli.parse_text(doc({"Z2": Z2})))
        assert d.passed and d.tasks == []
        assert json.loads(cli.report(d))["tasks"] == []

    def test_weyl_example_all_pass(self):
        d = cli.run(cli.parse("example:weyl_z2_f3"))
        assert d.passed
        res = {t.op + ":" + str(t.index): t.result for t in d.tasks}
        assert res["bisections:2"]["count"] == res["bisections:3"]["count"] == 2
        assert res["twist:6"] == {"cochains": 4, "cocycles": 2, "h2_classes": 1}

    def test_corrupted_target_fails_with_witness(self):
        d = cli.run(cli.parse("example:corrupted_target"))
        assert not d.passed
        fails = [law for r in d.tasks[0].reports for law in r.failures]
        assert fails and all(f.witness is not None for f in fails)

    def test_failure_does_not_abort_later_tasks(self):
        objs = {"Z2": Z2, "kZ2": {"type": "group_algebra", "group": "Z2"}, "W": {"type": "algebroid", "kind": "weyl", "hopf": "kZ2"}}
        tasks = [{"op": "enumerate", "target": "W", "kind": "bisection-left", "limit": 1}, {"op": "check", "target": "kZ2"}]
        d = cli.run(cli.parse_text(doc(objs, tasks)))
        assert [t.status for t in d.tasks] == ["error", "pass"]
        assert d.tasks[0].error["type"] == "SearchSpaceTooLarge"

    def test_build_only(self):
        d = cli.build_only(cli.parse("example:weyl_z2_f3"))
        assert {t.target: t.result for t in d.tasks}["W"] == {"dim": 4, "base_dim": 2, "kind": "weyl"}

    @pytest.mark.parametrize("where", [{"map": "s", "index": 1, "key": 0}, {"map": "eps", "index": 1, "key": 0}, {"map": "delta", "index": 0, "key": [0, 0]}])
    def test_mutations_are_caught(self, where):
        objs = {"Z2": Z2, "kZ2": {"type": "group_algebra", "group": "Z2"}, "W": {"type": "algebroid", "kind": "weyl", "hopf": "kZ2", "mutate": where}}
        d = cli.run(cli.parse_text(doc(objs, [{"op": "check", "target": "W", "hopf": False}])))
        t = d.tasks[0]
        assert t.status == "fail"
        assert all(law.witness is not None for r in t.reports for law in r.failures)


class TestReport:
    def test_json_round_trip(self):
        d = cli.run(cli.parse("example:weyl_z2_f3"))
        raw = cli.report(d)
        assert json.loads(raw) == json.loads(json.dumps(d.to_dict()))
        assert raw == (json.dumps(json.loads(raw), sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode()

    def test_same_doc_serialised_twice(self):
        d = cli.run(cli.parse("example:groups"))
        assert cli.report(d) == cli.report(d)

    def test_text_has_one_line_per_task(self):
        d = cli.run(cli.parse("example:weyl_z2_f3"))
        lines = cli.report(d, "text").decode().splitlines()
        task_lines = [ln for ln in lines if ln.startswith("[")]
        assert len(task_lines) == len(d.tasks)
        assert all(("PASS" in ln) or ("FAIL" in ln) for ln in task_lines)

    def test_timing_only_on_request(self):
        d = cli.run(cli.parse("example:groups"))
        assert "seconds" not in json.loads(cli.report(d))["tasks"][0]
        assert "seconds" in json.loads(cli.report(d, timing=True))["tasks"][0]

    @given(st.integers(2, 5), st.sampled_from([2, 3, 5, 7]))
    @settings(max_examples=10, deadline=None)
    def test_identical_input_identical_bytes(self, n, p):
        objs = {"G": {"type": "group", "table": cyclic_table(n)}, "kG": {"type": "group_algebra", "group": "G"}}
        text = doc(objs, [{"op": "check", "target": "kG"}], {"prime": p})
        a = cli.report(cli.run(cli.parse_text(text)))
        b = cli.report(cli.run(cli.parse_text(text)))
        assert a == b and json.loads(a)["passed"]


class TestMain:
    def test_examples_listing(self, capsysbinary):
        code, out = run_main(capsysbinary, ["examples"])
        assert code == 0 and b"example:weyl_z2_f3" in out.out

    def test_report_exit_zero(self, capsysbinary):
        code, out = run_main(capsysbinary, ["report", "example:weyl_z2_f3"])
        assert code == 0 and json.loads(out.out)["passed"]

    def test_corrupted_target_exit_nonzero(self, capsysbinary):
        code, out = run_main(capsysbinary, ["check", "example:corrupted_target", "--format", "json"])
        assert code == 1 and not json.loads(out.out)["passed"]

    def test_parse_error_exit_two(self, tmp_path, capsysbinary):
        p = tmp_path / "bad.json"
        p.write_text("{")
        code, out = run_main(capsysbinary, ["check", str(p)])
        assert code == 2 and b"ParseError" in out.err

    def test_output_file_and_parallel_flag(self, tmp_path, capsysbinary):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert cli.main(["report", "example:weyl_z2_f3", "-o", str(a)]) == 0
        assert cli.main(["report", "example:weyl_z2_f3", "-o", str(b), "--parallel", "4"]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_enumerate_limit(self, capsysbinary):
        code, out = run_main(capsysbinary, ["enumerate", "example:weyl_z2_f3", "--limit", "3", "--format", "json"])
        data = json.loads(out.out)
        assert code == 1
        assert {t["error"]["type"] for t in data["tasks"] if t["status"] == "error"} == {"SearchSpaceTooLarge"}

    @pytest.mark.parametrize("command,ops", [("twist", {"twist"}), ("dual", {"dual"}), ("build", {"build"})])
    def test_subcommands_filter_ops(self, capsysbinary, command, ops):
        code, out = run_main(capsysbinary, [command, "example:weyl_z2_f3", "--format", "json"])
        assert code == 0 and {t["op"] for t in json.loads(out.out)["tasks"]} == ops
