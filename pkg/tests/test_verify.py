import json

import pytest

from twistcat.fincat import codiscrete, category_axioms_check
from twistcat.verify import CheckReport, Law, VerificationPolicy, differ, refused, run_laws


def square_law(bad=()):
    return Law("square", ("x",), lambda x: differ(x * x % 7, 0) if x in bad else None,
               space=lambda: ((x,) for x in range(1000)), size=1000,
               sample=lambda r: (r.randrange(1000),))


def test_exhaustive_pass_counts_full_space():
    rep = run_laws("s", [square_law()], VerificationPolicy(mode="exhaustive"))
    r = rep.laws[0]
    assert rep.ok and r.mode == "exhaustive" and r.cases == 1000 and r.counterexample is None


def test_counterexample_is_least_index():
    for workers in (1, 4):
        rep = run_laws("s", [square_law(bad={999, 3, 500})],
                       VerificationPolicy(mode="exhaustive", workers=workers))
        r = rep.laws[0]
        assert r.violations == 3
        assert r.counterexample == {"args": {"x": 3}, "lhs": 2, "rhs": 0}


def test_fail_has_counterexample():
    rep = run_laws("s", [square_law(bad={5})])
    assert rep.status == "fail"
    assert all(r.counterexample is not None for r in rep.failures())


def test_auto_mode_threshold():
    rep = run_laws("s", [square_law()], VerificationPolicy(threshold=999, samples=50))
    assert rep.laws[0].mode == "sampled" and rep.laws[0].cases == 50
    rep = run_laws("s", [square_law()], VerificationPolicy(threshold=1000))
    assert rep.laws[0].mode == "exhaustive"


def test_sampled_adds_critical_scan():
    law = Law("c", ("x",), lambda x: None, space=lambda: ((x,) for x in range(10)), size=10,
              sample=lambda r: (r.randrange(10),), critical=lambda: [(0,), (1,)])
    rep = run_laws("c", [law], VerificationPolicy(mode="sampled", samples=20))
    assert [(r.law, r.mode, r.cases) for r in rep.laws] == [("c", "sampled", 20),
                                                            ("c@critical", "exhaustive", 2)]


def test_crash_inside_law_is_a_violation():
    law = Law("boom", ("x",), lambda x: None if 1 // x else "", space=lambda: [(1,), (0,)], size=2)
    r = run_laws("b", [law]).laws[0]
    assert r.violations == 1
    assert r.counterexample["args"] == {"x": 0}
    assert "ZeroDivisionError" in r.counterexample["note"]


@pytest.mark.parametrize("bad", [set(), {17, 400}])
def test_sampled_reports_reproducible(bad):
    pol = VerificationPolicy(mode="sampled", samples=300, seed=7)
    a = run_laws("s", [square_law(bad)], pol).to_json()
    b = run_laws("s", [square_law(bad)], pol).to_json()
    c = run_laws("s", [square_law(bad)], pol.with_(workers=3)).to_json()
    assert a == b == c


def test_different_seed_draws_differ():
    seen = []
    law = Law("x", ("x",), lambda x: seen.append(x), space=None, size=None,
              sample=lambda r: (r.randrange(10 ** 9),))
    run_laws("x", [law], VerificationPolicy(samples=5, seed=1))
    run_laws("x", [law], VerificationPolicy(samples=5, seed=2))
    assert seen[:5] != seen[5:]


def test_json_shape():
    rep = category_axioms_check(codiscrete(2))
    doc = json.loads(rep.to_json())
    assert doc["status"] == "pass"
    assert doc["policy"] == {"mode": "auto", "samples": 10000, "seed": 20240601,
                             "threshold": 200000}
    assert "timing_ms" not in doc
    assert "timing_ms" in json.loads(rep.to_json(timing=True))
    names = [l["law"] for l in doc["laws"]]
    assert names == sorted(names) and "associativity" in names


def test_refused_and_merge():
    base = run_laws("s", [square_law(bad={1})])
    r = refused("x", "because", cause=base)
    assert r.status == "refused" and r.law("square").violations == 1
    top = CheckReport("top")
    assert top.merge(base, "p.") is top
    assert top.law("p.square").violations == 1
    assert top.summary().startswith("top: FAIL")


def test_policy_validation():
    with pytest.raises(ValueError):
        VerificationPolicy(mode="guess")
    with pytest.raises(ValueError):
        VerificationPolicy(samples=0)
