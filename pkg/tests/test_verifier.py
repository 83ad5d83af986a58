import json
import random

import pytest

from snzlab.charge import SequenceTooShort
from snzlab.lemmas import recover_b
from snzlab.verifier import (
    Counterexample, box_count, box_radices, check_counterexample, p_digest,
    recheck_certificate, verify_level, verify_range,
)

from oracles import box_vectors, brute_level


def test_level_examples():
    r = verify_level([1, 1], 1)
    assert r.verdict == "counterexample"
    assert r.counterexample.w == (1, 0) and r.counterexample.sum == 0
    r = verify_level([0], 0)
    assert r.verdict == "counterexample" and r.counterexample.w == (1,)
    assert verify_level([1, -1, 2], 2).verdict == "ok"
    # the box 2 x 3 x 2 holds 11 nonzero vectors
    assert verify_level([1, -1, 2], 2).vectors == 11
    assert sum(1 for w in box_vectors(2) if any(w)) == 11


def test_range_examples():
    cert = verify_range([1, -1, 2], 2)
    assert cert.verdict == "ok"
    assert [lv.verdict for lv in cert.levels] == ["ok"] * 3
    assert cert.verified_through == 2

    with pytest.raises(SequenceTooShort):
        verify_range([1, 1], 5)
    cert = verify_range([1, 1, 0, 0, 0, 0], 5)
    assert cert.verdict == "counterexample"
    assert cert.counterexample.t == 1 and len(cert.levels) == 2

    cert = verify_range([5], 0)
    assert cert.verdict == "ok" and len(cert.levels) == 1


def test_box_counts():
    assert box_radices(1) == [2, 2]
    assert box_count(1) == 3
    assert box_count(6) == 1_053_695
    assert sum(1 for w in box_vectors(4) if any(w)) == box_count(4)


@pytest.mark.parametrize("strategy", ["exhaustive", "mitm"])
def test_agrees_with_brute_force(strategy):
    rng = random.Random(7)
    hits = 0
    for _ in range(60):
        t = rng.randint(0, 4)
        p = [rng.randint(-4, 4) for _ in range(t + 1)]
        want = brute_level(p, t)
        got = verify_level(p, t, strategy)
        if want is None:
            assert got.verdict == "ok"
        else:
            hits += 1
            assert got.verdict == "counterexample"
            assert got.counterexample.w == tuple(want)
    assert hits > 10


def test_strategies_agree_t4_and_t5():
    rng = random.Random(11)
    for trial in range(50):
        t = 4 if trial < 40 else 5
        p = [rng.randint(-30, 30) for _ in range(t + 1)]
        a = verify_level(p, t, "exhaustive")
        b = verify_level(p, t, "mitm")
        assert a.verdict == b.verdict
        assert a.counterexample == b.counterexample


def test_counterexamples_are_annihilated_by_b():
    rng = random.Random(3)
    seen = 0
    for _ in range(80):
        t = rng.randint(1, 5)
        p = [rng.randint(-6, 6) for _ in range(t + 1)]
        r = verify_level(p, t, "mitm")
        if r.verdict != "counterexample":
            continue
        seen += 1
        b = recover_b(r.counterexample.w)
        assert sum(bk * pk for bk, pk in zip(b.b, p)) == 0
    assert seen > 10


def test_check_counterexample_rejects_bad_inputs():
    p = [1, 1]
    assert check_counterexample(p, Counterexample(1, (1, 0)))
    assert not check_counterexample(p, Counterexample(1, (0, 1)))
    assert not check_counterexample(p, Counterexample(1, (0, 0)))
    assert not check_counterexample(p, Counterexample(1, (2, 0)))
    assert not check_counterexample(p, Counterexample(1, (1, 0), sum=5))


def test_mitm_fallback():
    p = [1, -1, 2, -3, 5]
    r = verify_level(p, 4, "mitm", mitm_cap=4)
    assert r.fallback and "exhaustive" in r.fallback
    assert r.verdict == verify_level(p, 4, "exhaustive").verdict == "ok"


def test_budget_gives_indeterminate():
    p = [1, -1, 2, -3, 5, -8, 13]
    cert = verify_range(p, 6, budget_ms=0)
    assert cert.verdict == "indeterminate"
    assert cert.levels[-1].verdict == "indeterminate"
    assert verify_level(p, 6, budget_ms=0).verdict == "indeterminate"


def test_deterministic_certificates_are_byte_identical():
    p = [1, -1, 2, -3, 5, -8, 14]
    c1 = verify_range(p, 6, jobs=1, deterministic=True).dumps()
    c2 = verify_range(p, 6, jobs=3, deterministic=True).dumps()
    assert c1 == c2
    obj = json.loads(c1)
    assert obj["ms"] is None
    assert obj["p_digest"] == p_digest(p)


def test_parallel_finds_least_counterexample():
    rng = random.Random(5)
    for _ in range(5):
        p = [rng.randint(-3, 3) for _ in range(6)]
        a = verify_level(p, 5, jobs=1)
        b = verify_level(p, 5, jobs=2)
        assert a.counterexample == b.counterexample


def test_recheck():
    p = [1, -1, 2, -3]
    cert = verify_range(p, 3).to_json()
    assert recheck_certificate(cert, p)
    assert not recheck_certificate(cert, [1, -1, 2, -4])
    bad = dict(cert, p_digest="sha256:00")
    assert not recheck_certificate(bad, p)

    p = [1, 1]
    cert = verify_range(p, 1).to_json()
    assert cert["counterexample"] == {"t": 1, "w": ["1", "0"], "sum": "0"}
    assert recheck_certificate(cert, p)
    forged = json.loads(json.dumps(cert))
    forged["counterexample"]["w"] = ["0", "1"]
    assert not recheck_certificate(forged, p)


def test_certificate_schema():
    obj = verify_range([1, 1], 1).to_json()
    assert set(obj) >= {"p_digest", "levels", "counterexample", "strategy", "ms"}
    assert obj["levels"][0]["t"] == 0 and obj["levels"][0]["verdict"] == "ok"


def test_rejects_bad_arguments():
    with pytest.raises(ValueError):
        verify_level([1], 0, "bogus")
    with pytest.raises(ValueError):
        verify_level([1], 0, jobs=0)
