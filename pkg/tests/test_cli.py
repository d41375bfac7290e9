import json

import pytest

from skeinpoly import cli
from skeinpoly.polyalg import graded_basis
from skeinpoly.polydiag import BIGON, SkeinVector
from skeinpoly.scalars import LAURENT


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report_of(out):
    return json.loads(out)


TURNBACK = json.dumps(
    {
        "components": [{"markings": 2}],
        "endpoints": [
            {"marking": 0, "height": 0, "state": "-"},
            {"marking": 0, "height": 1, "state": "+"},
        ],
        "edges": [[["b", 0], ["b", 1]]],
        "free_loops": 0,
    }
)


def vector_envelope():
    d = graded_basis(BIGON, 1)[0]
    x = SkeinVector(BIGON, LAURENT, {d: LAURENT.one()})
    return json.dumps(
        {"surface": x.surface.to_json(), "ring": "laurent", "terms": x.to_json()}
    )


def test_report_shape_and_schema(capsys):
    code, out, _ = run(capsys, "verify", "chebyshev", "--kmax", "5", "--mmax", "5")
    assert code == 0
    r = report_of(out)
    assert r["schema"] == "skeinpoly-report/1"
    assert r["command"] == "verify"
    assert set(r) == {"schema", "command", "inputs", "result", "timing"}
    assert r["result"]["pass"] is True
    names = [c["name"] for c in r["result"]["checks"]]
    assert names == sorted(names)


def test_timing_field_modes(capsys, monkeypatch):
    code, out, _ = run(capsys, "verify", "relations")
    assert report_of(out)["timing"]["seconds"] >= 0
    code, out, _ = run(capsys, "--no-timing", "verify", "relations")
    assert report_of(out)["timing"] is None
    monkeypatch.setenv("SKEIN_TIMING", "0")
    code, out, _ = run(capsys, "verify", "relations")
    assert report_of(out)["timing"] is None


def test_reports_are_byte_identical(capsys):
    _, out1, _ = run(capsys, "--no-timing", "verify", "confluence", "--count", "25")
    _, out2, _ = run(capsys, "--no-timing", "verify", "confluence", "--count", "25")
    assert out1 == out2


def test_seed_recorded_in_report(capsys):
    _, out, _ = run(capsys, "--no-timing", "verify", "confluence", "--count", "5", "--seed", "7")
    r = report_of(out)
    assert r["result"]["parameters"]["seed"] == 7
    assert r["inputs"]["parameters"]["seed"] == 7


def test_normalize_turnback(capsys):
    code, out, _ = run(capsys, "normalize", "--diagram", TURNBACK)
    assert code == 0
    r = report_of(out)
    terms = r["result"]["terms"]
    assert len(terms) == 1
    diagram, coeff = terms[0]
    assert diagram["endpoints"] == []
    assert coeff == [[-1, 1, 1]]  # v^(-1)


def test_normalize_strategies_agree(capsys):
    _, low, _ = run(capsys, "--no-timing", "normalize", "--diagram", TURNBACK, "--strategy", "low")
    _, high, _ = run(capsys, "--no-timing", "normalize", "--diagram", TURNBACK, "--strategy", "high")
    assert report_of(low)["result"] == report_of(high)["result"]


def test_mul_unit(capsys):
    env = vector_envelope()
    code, out, _ = run(capsys, "mul", "--left", env, "--right", env)
    assert code == 0
    assert len(report_of(out)["result"]["terms"]) == 1


def test_split_state_sum(capsys):
    env = vector_envelope()
    code, out, _ = run(capsys, "split", "--input", env, "--gap1", "0", "--gap2", "1")
    assert code == 0
    r = report_of(out)
    assert r["result"]["surface"] == {"components": [{"markings": 2}, {"markings": 2}]}
    assert len(r["result"]["terms"]) == 2


def test_torus_transparency_command(capsys):
    code, out, _ = run(capsys, "torus", "--threaded", "1,0", "--probe", "2,3", "--N", "5")
    assert code == 0
    assert report_of(out)["result"]["transparent"] is True


def test_malformed_json_exits_2(capsys):
    code, _, err = run(capsys, "normalize", "--diagram", "{broken")
    assert code == 2
    assert "parse error" in err


def test_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "normalize", "--diagram", "/nonexistent/d.json")
    assert code == 2


def test_even_order_exits_3(capsys):
    env = vector_envelope()
    code, _, err = run(capsys, "frobenius", "--input", env, "--N", "4")
    assert code == 3
    assert "precondition" in err


def test_same_component_merge_exits_3(capsys):
    env = vector_envelope()
    code, _, err = run(capsys, "qf-merge", "--input", env, "--mark1", "0", "--mark2", "1")
    assert code == 3


def test_surface_mismatch_exits_3(capsys):
    env = vector_envelope()
    other = json.dumps(
        {
            "surface": {"components": [{"markings": 3}]},
            "ring": "laurent",
            "terms": [],
        }
    )
    code, _, err = run(capsys, "mul", "--left", env, "--right", other)
    assert code == 3


def test_unknown_suite_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "mystery"])
    assert exc.value.code == 2


def test_reduce_dim_monogon(capsys):
    rho = json.dumps(
        {"surface": {"components": [{"markings": 1}]}, "generators": [], "values": []}
    )
    code, out, _ = run(capsys, "reduce-dim", "--surface", "monogon", "--N", "3", "--rho", rho)
    assert code == 0
    r = report_of(out)
    assert r["result"]["dim"] == 1
    assert r["result"]["certificate"]["ok"] is True


def test_wrong_surface_point_exits_3(capsys):
    rho = json.dumps(
        {"surface": {"components": [{"markings": 1}]}, "generators": [], "values": []}
    )
    code, _, err = run(capsys, "reduce-dim", "--surface", "bigon", "--N", "3", "--rho", rho)
    assert code == 3


def test_verify_failure_exits_1(capsys, monkeypatch):
    # force a failing suite by monkeypatching the registry
    monkeypatch.setitem(
        cli.verify_mod.SUITES,
        "chebyshev",
        lambda **kw: {
            "suite": "chebyshev",
            "parameters": {},
            "checks": [{"name": "forced", "pass": False}],
            "pass": False,
        },
    )
    code, out, _ = run(capsys, "verify", "chebyshev")
    assert code == 1
    assert report_of(out)["result"]["pass"] is False
