"""Acceptance criteria 1-11.

Each test prints one ``CRITERION n: PASS|FAIL`` line (visible with ``-s`` or
when run as a script) and then asserts the result.
"""

import json
import random
import sys
import time
from fractions import Fraction
from itertools import count

import pytest

from snzlab.charge import GreedyMinimal, charge_of, h, h_row, weight_vector
from snzlab.clopen import apply_permutation, complement
from snzlab.extension import evens_extension_witness, pigeonhole_pair
from snzlab.lang import ClopenSyntaxError, evaluate, format_set, parse
from snzlab.lemmas import (
    build_dual_basis, build_q, check_dual_basis, check_sandwich,
    check_vandermonde_error, det, is_psd,
)
from snzlab.numerics import binom
from snzlab.verifier import recheck_certificate, verify_level, verify_range

from conftest import random_clopen, random_perm
from oracles import brute_level

@pytest.fixture
def report(capsys):
    def emit(n, ok, detail=""):
        line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
        with capsys.disabled():
            print(f"\n{line}")
        assert ok, line
    return emit


def test_criterion_01_dual_basis(report):
    start = time.monotonic()
    ok = all(check_dual_basis(t) for t in range(31))
    took = time.monotonic() - start
    report(1, ok and took < 60, f"t <= 30, {took:.1f}s")


def test_criterion_02_recurrence_and_reindexing(report):
    rng = random.Random(2)
    p = [rng.randint(-10 ** 12, 10 ** 12) for _ in range(42)]
    rec = all(h(m, n, p) == h(m + 1, n, p) + h(m, n + 1, p)
              for m in range(41) for n in range(41 - m))
    pairs = 0
    reidx = True
    while pairs < 200:
        t = rng.randint(0, 12)
        w = tuple(rng.randint(0, binom(t, j)) for j in range(t + 1))
        if not any(w):
            continue
        ps = [rng.randint(-10 ** 9, 10 ** 9) for _ in range(t + 1)]
        vs = build_dual_basis(t)
        lhs = sum(x * y for x, y in zip(w, h_row(t, ps)))
        rhs = sum(sum(a * b for a, b in zip(w, vs.v(k))) * ps[k] for k in range(t + 1))
        reidx &= lhs == rhs
        pairs += 1
    report(2, rec and reidx, "m+n <= 40; 200 (w, p)")


def test_criterion_03_charge_laws(report):
    rng = random.Random(3)
    start = time.monotonic()
    p = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(25)]
    ok = True
    disjoint = 0
    while disjoint < 500:
        u, v = random_clopen(rng), random_clopen(rng)
        v = v - u
        disjoint += 1
        ok &= charge_of(u | v, p) == charge_of(u, p) + charge_of(v, p)
        ok &= charge_of(u, p) + charge_of(complement(u), p) == p[0]
        C = set(u.support) | set(rng.sample(range(10, 20), rng.randint(1, 5)))
        wv = weight_vector(u, C)
        ok &= sum(x * h(j, wv.t - j, p) for j, x in enumerate(wv.w)) == charge_of(u, p)
    for _ in range(100):
        pi = random_perm(rng, range(20))
        u = random_clopen(rng)
        ok &= charge_of(apply_permutation(u, pi), p) == charge_of(u, p)
    took = time.monotonic() - start
    report(3, ok and took < 120, f"{took:.1f}s")


def test_criterion_04_greedy(report):
    # oracle: brute force over the w-boxes, independent of the verifier
    def order():
        yield 0
        for n in count(1):
            yield n
            yield -n

    seq = []
    for k in range(3):
        seq.append(next(c for c in order() if brute_level(seq + [c], k) is None))
    engine = GreedyMinimal(2).terms(3)
    report(4, seq == engine == [1, -1, 2], f"oracle {seq}, engine {engine}")


def test_criterion_05_strategy_agreement(report):
    rng = random.Random(5)
    ok = True
    hits = 0
    for _ in range(50):
        p = [rng.randint(-8, 8) for _ in range(6)]
        for t in range(6):
            a = verify_level(p, t, "exhaustive")
            b = verify_level(p, t, "mitm")
            ok &= a.verdict == b.verdict and a.counterexample == b.counterexample
            hits += a.verdict == "counterexample"
    r = verify_level([1, 1], 1)
    ok &= r.verdict == "counterexample" and r.counterexample.w == (1, 0)
    report(5, ok, f"300 levels, {hits} counterexamples")


def test_criterion_06_scale_run(report):
    start = time.monotonic()
    p = GreedyMinimal(7).terms(8)
    cert = verify_range(p, 7, "exhaustive", jobs=8, deterministic=True)
    took = time.monotonic() - start
    rechecked = recheck_certificate(json.loads(cert.dumps()), p, strategy="mitm")
    ok = cert.verdict == "ok" and rechecked and took < 600
    report(6, ok, f"p = {p}, {took:.1f}s, recheck {'valid' if rechecked else 'invalid'}")


def test_criterion_07_sandwich(report):
    checks = [check_sandwich(t, 8) for t in (50, 200)]
    bad = sum(len(c.details["violations"]) for c in checks)
    report(7, bad == 0, f"{sum(c.details['cells'] for c in checks)} cells, {bad} violations")


def test_criterion_08_vandermonde(report):
    checks = [check_vandermonde_error(t, s) for s in (1, 2, 3) for t in (10 ** 3, 10 ** 4)]
    report(8, all(c.ok for c in checks), f"{len(checks)} (t, s) pairs")


def test_criterion_09_spectral(report):
    ok = True
    failures = []
    for s in range(1, 7):
        Q = build_q(s).Q
        d = det(Q)
        floor = Fraction(1, (s + 2) ** (2 * s * (s + 1)))
        chain = d / Fraction((s + 1) ** (2 * (s - 1)))
        target = Fraction(1, (10 * s) ** (10 * s * s))
        shifted = [[Q[a][b] - (chain if a == b else 0) for b in range(s + 1)]
                   for a in range(s + 1)]
        psd = is_psd(shifted)[0]
        for name, cond in (("det floor", d >= floor), ("chain >= target", chain >= target),
                           ("Q - chain*I psd", psd)):
            if not cond:
                failures.append(f"s={s}: {name}")
        ok &= d >= floor and chain >= target and psd
    ok &= det(build_q(1).Q) == Fraction(1, 9)
    report(9, ok, "; ".join(failures) or "s = 1..6")


def test_criterion_10_extension(report):
    ok = True
    for e in range(-50, 51):
        w = evens_extension_witness(e)
        ok &= not w.element.is_empty() and w.forced == 0
    rng = random.Random(10)
    for _ in range(1000):
        a = rng.randint(1, 30)
        vals = rng.sample(range(-10 ** 6, 10 ** 6), a + 1)
        l, m = pigeonhole_pair(vals, a)
        ok &= l < m and (vals[l - 1] - vals[m - 1]) % a == 0
    report(10, ok, "e in [-50, 50]; 1000 pigeonhole inputs")


def test_criterion_11_parser(report):
    rng = random.Random(11)
    ok = True
    for _ in range(1000):
        u = random_clopen(rng)
        ok &= evaluate(parse(format_set(u))) == u
    rejected = 0
    for text in ("H({1},{1})", "(H({1},{}) | FULL", "H(1,{})"):
        try:
            parse(text)
        except ClopenSyntaxError as exc:
            rejected += exc.line >= 1 and exc.column >= 1
    ok &= rejected == 3
    report(11, ok, f"round trips ok, {rejected}/3 errors diagnosed")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
