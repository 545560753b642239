from __future__ import annotations

import json
import shutil

import jsonschema
import pytest
from click.testing import CliRunner
from conftest import FIXTURES, ROOT

from nexang.cli import exit_code, main
from nexang.report import FAIL, INCONCLUSIVE, PASS

SCHEMA = json.loads((ROOT / "docs" / "schema.json").read_text())


@pytest.fixture()
def work(tmp_path):
    dst = tmp_path / "fixtures"
    shutil.copytree(FIXTURES, dst, ignore=shutil.ignore_patterns("out"))
    return dst


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args], catch_exceptions=False)


def edit(path, fn):
    doc = json.loads(path.read_text())
    fn(doc)
    path.write_text(json.dumps(doc))


def test_exit_code_table():
    assert [exit_code(v) for v in (PASS, FAIL, INCONCLUSIVE)] == [0, 1, 3]


@pytest.mark.parametrize(
    "job,code",
    [
        ("check_stable", 0),
        ("check_split", 0),
        ("check_category", 0),
        ("check_identity_functor", 0),
        ("check_stable_broken", 1),
        ("check_bound_zero", 3),
    ],
)
def test_exit_codes(work, job, code):
    res = run("check", work / "jobs" / f"{job}.json", "--report", "json")
    assert res.exit_code == code, res.output
    env = json.loads(res.output)
    assert env["exit_code"] == code
    jsonschema.validate(env, SCHEMA["$defs"]["report"] | {"$defs": SCHEMA["$defs"]})


def test_failures_name_the_axiom(work):
    res = run("check", work / "jobs" / "check_stable_broken.json")
    assert res.exit_code == 1
    assert "F1b" in res.output and "FAIL" in res.output


def test_missing_file_is_an_input_error(work):
    res = run("check", work / "jobs" / "nope.json", "--report", "json")
    assert res.exit_code == 2
    assert "file not found" in json.loads(res.output)["error"]


def test_non_prime_field_is_located(work):
    edit(work / "doubled.json", lambda d: d["header"].update(field_char=4))
    res = run("check", work / "jobs" / "check_category.json", "--report", "json")
    assert res.exit_code == 2
    err = json.loads(res.output)["error"]
    assert "#/header/field_char" in err and "prime" in err


def test_missing_field_is_located(work):
    edit(work / "jobs" / "check_stable.json", lambda d: d["payload"].pop("angulation"))
    res = run("check", work / "jobs" / "check_stable.json", "--report", "json")
    assert res.exit_code == 2
    assert "payload" in json.loads(res.output)["error"]


def test_dangling_reference_is_an_input_error(work):
    edit(work / "jobs" / "check_stable.json", lambda d: d["payload"].update(angulation={"$ref": "../missing.json"}))
    res = run("check", work / "jobs" / "check_stable.json", "--report", "json")
    assert res.exit_code == 2
    assert "unresolved reference" in json.loads(res.output)["error"]


def test_bad_hom_dimension_is_located(work):
    edit(work / "doubled.json", lambda d: d["payload"]["identity"].update(S=[1, 0, 0]))
    res = run("check", work / "jobs" / "check_category.json", "--report", "json")
    assert res.exit_code == 2
    assert "identity" in json.loads(res.output)["error"]


def test_json_reports_are_byte_identical(work):
    jobs = [work / "jobs" / f"{j}.json" for j in ("check_stable", "check_stable_broken", "check_equivalence")]
    first = run("check", *jobs, "--report", "json").output
    second = run("check", *jobs, "--report", "json").output
    assert first == second


def test_parallel_keeps_job_order(work):
    jobs = [work / "jobs" / f"{j}.json" for j in ("check_stable_broken", "check_split", "check_category")]
    serial = run("check", *jobs, "--report", "json")
    parallel = run("check", *jobs, "--report", "json", "--parallel", "3")
    assert serial.output == parallel.output
    results = json.loads(serial.output)["results"]
    assert [r["exit_code"] for r in results] == [1, 0, 0]
    assert serial.exit_code == 1


def test_universe_bound_override(work):
    res = run("check", work / "jobs" / "check_stable.json", "--report", "json", "--universe-bound", "1")
    assert res.exit_code == 0
    assert json.loads(res.output)["universe_bound"] == 1


def test_transport_writes_a_loadable_structure(work):
    res = run("transport", work / "jobs" / "transport_stable.json", "--report", "json")
    assert res.exit_code == 0, res.output
    out = work / "jobs" / "out" / "stable_transported.json"
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, SCHEMA)
    assert doc["payload"]["type"] == "angulation"


def test_transport_to_skeleton_reports_a_strict_inverse(work):
    res = run("transport", work / "jobs" / "transport_skeleton.json", "--report", "json")
    assert res.exit_code == 0, res.output
    assert '"exact-inverse"' in res.output


def test_crosscheck_job_agrees(work):
    res = run("check", work / "jobs" / "crosscheck.json", "--report", "json")
    assert res.exit_code == 0, res.output


@pytest.mark.parametrize("path", sorted(p.name for p in FIXTURES.glob("*.json")) + sorted("jobs/" + p.name for p in (FIXTURES / "jobs").glob("*.json")))
def test_fixtures_match_the_schema(path):
    jsonschema.validate(json.loads((FIXTURES / path).read_text()), SCHEMA)
