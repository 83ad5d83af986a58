"""Strict-nonzeroness search at a fixed level ``t``.

At level ``t`` the charge of a clopen set is ``sum_j w_j H_j`` with
``H_j = h(j, t - j)`` and ``0 <= w_j <= C(t, j)``. The charge is strictly
nonzero at that level iff no nonzero ``w`` in that box has a zero sum.

Two strategies decide the same predicate:

``exhaustive``
    Mixed-radix odometer over ``w_0 .. w_{t-2}`` with incremental sum
    updates. The last two digits ``(w_{t-1}, w_t)`` form a line for each
    odometer state and are resolved by exact division. The top two digits
    split the box into shards that run in worker processes. A shard whose
    reachable sum interval excludes 0 is skipped.

``mitm``
    Meet in the middle: hash the partial sums of the leading digits,
    stream the trailing digits and look up negations. Falls back to
    ``exhaustive`` when the left table would exceed ``mitm_cap`` entries.

Both report the lexicographically least counterexample when run to
completion.
"""

from __future__ import annotations

import hashlib
import json
import logging
import multiprocessing as mp
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from math import prod

from .charge import h_row, _terms
from .numerics import binom, int_to_str

log = logging.getLogger(__name__)

__all__ = [
    "STRATEGIES",
    "Counterexample",
    "LevelResult",
    "SnzCertificate",
    "box_radices",
    "box_count",
    "verify_level",
    "verify_range",
    "check_counterexample",
    "p_digest",
    "recheck_certificate",
]

STRATEGIES = ("exhaustive", "mitm")
DEFAULT_MITM_CAP = 1 << 22
_CHECK_EVERY = 1 << 15


@dataclass(frozen=True)
class Counterexample:
    t: int
    w: tuple
    sum: int = 0

    def to_json(self) -> dict:
        return {"t": self.t, "w": [int_to_str(x) for x in self.w],
                "sum": int_to_str(self.sum)}


@dataclass
class LevelResult:
    t: int
    verdict: str  # "ok" | "counterexample" | "indeterminate"
    strategy: str
    counterexample: Counterexample | None = None
    vectors: int = 0
    fallback: str | None = None
    pruned_shards: int = 0

    def __bool__(self):
        return self.verdict == "ok"

    def to_json(self) -> dict:
        out = {"t": self.t, "verdict": self.verdict, "strategy": self.strategy,
               "vectors": int_to_str(self.vectors)}
        if self.fallback:
            out["fallback"] = self.fallback
        if self.counterexample is not None:
            out["w"] = [int_to_str(x) for x in self.counterexample.w]
        return out


@dataclass
class SnzCertificate:
    p: list
    t_max: int
    strategy: str
    levels: list = field(default_factory=list)
    counterexample: Counterexample | None = None
    ms: int | None = None

    @property
    def verdict(self) -> str:
        if self.counterexample is not None:
            return "counterexample"
        if len(self.levels) == self.t_max + 1 and all(lv.verdict == "ok" for lv in self.levels):
            return "ok"
        return "indeterminate"

    @property
    def verified_through(self) -> int:
        """Largest ``t`` such that every level ``0..t`` is ok (-1 if none)."""
        top = -1
        for lv in self.levels:
            if lv.verdict != "ok":
                break
            top = lv.t
        return top

    def to_json(self) -> dict:
        return {
            "schema": "snzlab/1",
            "p_digest": p_digest(self.p),
            "p": [int_to_str(x) for x in self.p],
            "t_max": self.t_max,
            "verdict": self.verdict,
            "levels": [lv.to_json() for lv in self.levels],
            "counterexample": (None if self.counterexample is None
                               else self.counterexample.to_json()),
            "strategy": self.strategy,
            "ms": self.ms,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"


def p_digest(p) -> str:
    text = ",".join(int_to_str(x) for x in p)
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


def box_radices(t: int) -> list[int]:
    return [binom(t, j) + 1 for j in range(t + 1)]


def box_count(t: int) -> int:
    """Number of nonzero weight vectors at level ``t``."""
    return prod(box_radices(t)) - 1


def check_counterexample(p, cex: Counterexample) -> bool:
    """Independent re-check: box bounds, nonzero, and the sum recomputed from p."""
    t, w = cex.t, cex.w
    if len(w) != t + 1 or not any(w):
        return False
    if any(not 0 <= x <= binom(t, j) for j, x in enumerate(w)):
        return False
    ps = _terms(p, t + 1)
    total = 0
    for j, x in enumerate(w):
        total += x * sum((-1) ** i * binom(t - j, i) * ps[j + i]
                         for i in range(t - j + 1))
    return total == 0 == cex.sum


# -- exhaustive ------------------------------------------------------------

def _shard_prefixes(t: int, radices: list[int]) -> list[tuple]:
    """Fixed values of the top outer digits; the last two digits are the tail."""
    n_outer = max(0, t - 1)
    k = min(2, n_outer)
    prefixes = [()]
    for j in range(k):
        prefixes = [pre + (d,) for pre in prefixes for d in range(radices[j])]
    return prefixes


def _reachable(H, radices, start):
    lo = hi = 0
    for j in range(start, len(H)):
        span = H[j] * (radices[j] - 1)
        if span < 0:
            lo += span
        else:
            hi += span
    return lo, hi


_shared_stop = None


def _pool_init(stop):
    global _shared_stop
    _shared_stop = stop


def _scan_shard(H, radices, prefix, index, deadline):
    """Scan one shard in lexicographic order.

    Returns ``("hit", w)``, ``("ok", None)``, ``("pruned", None)``,
    ``("timeout", None)`` or ``("aborted", None)``.
    """
    t = len(H) - 1
    k = len(prefix)
    if deadline is not None and time.monotonic() > deadline:
        return ("timeout", None)
    S0 = sum(d * x for d, x in zip(prefix, H))
    lo, hi = _reachable(H, radices, k)
    if not (S0 + lo <= 0 <= S0 + hi):
        return ("pruned", None)

    Ha, Hb = H[t - 1], H[t]
    Ra = radices[t - 1]
    first, last = k, t - 2  # free outer digits
    d = list(prefix) + [0] * (t - 1 - k)
    wrap = [H[i] * (radices[i] - 1) for i in range(t + 1)]
    S = S0
    zero_state = not any(prefix)
    stop = _shared_stop
    counter = 0

    while True:
        # tail line: S + a*Ha + b*Hb == 0, a in [0, Ra), b in {0, 1}
        best = None
        for b in (0, 1):
            T = -S - b * Hb
            if Ha == 0:
                if T:
                    continue
                a = 1 if (zero_state and b == 0) else 0
                if a >= Ra:
                    continue
            else:
                if T % Ha:
                    continue
                a = T // Ha
                if a < 0 or a >= Ra or (zero_state and a == 0 and b == 0):
                    continue
            if best is None or a < best[0]:
                best = (a, b)
        if best is not None:
            return ("hit", tuple(d) + best)

        # odometer step
        i = last
        while i >= first:
            if d[i] + 1 < radices[i]:
                d[i] += 1
                S += H[i]
                break
            S -= wrap[i]
            d[i] = 0
            i -= 1
        else:
            return ("ok", None)
        zero_state = False

        counter += 1
        if counter >= _CHECK_EVERY:
            counter = 0
            if deadline is not None and time.monotonic() > deadline:
                return ("timeout", None)
            if stop is not None and index > stop.value:
                return ("aborted", None)


def _exhaustive(H, radices, jobs, deadline, deterministic):
    t = len(H) - 1
    if t == 0:
        return (("hit", (1,)) if H[0] == 0 else ("ok", None)), 0
    prefixes = _shard_prefixes(t, radices)
    results: dict[int, tuple] = {}

    if jobs <= 1 or len(prefixes) == 1:
        global _shared_stop
        _shared_stop = None
        for idx, pre in enumerate(prefixes):
            res = _scan_shard(H, radices, pre, idx, deadline)
            results[idx] = res
            if res[0] in ("hit", "timeout"):
                break
    else:
        ctx = mp.get_context("fork")
        stop = ctx.Value("q", len(prefixes), lock=False)
        with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx,
                                 initializer=_pool_init, initargs=(stop,)) as ex:
            futs = {ex.submit(_scan_shard, H, radices, pre, idx, deadline): idx
                    for idx, pre in enumerate(prefixes)}
            pending = set(futs)
            while pending:
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for f in done:
                    idx = futs[f]
                    if f.cancelled():
                        continue
                    results[idx] = f.result()
                    if results[idx][0] == "hit":
                        # deterministic: later shards cannot hold the least hit
                        cut = idx if deterministic else -1
                        if cut < stop.value:
                            stop.value = cut
                for f in pending:
                    if futs[f] > stop.value:
                        f.cancel()

    pruned = sum(1 for r in results.values() if r[0] == "pruned")
    hits = sorted((idx, r[1]) for idx, r in results.items() if r[0] == "hit")
    if hits:
        # shards are in lexicographic order, so the first hit is the least
        # one whenever every earlier shard completed
        return ("hit", hits[0][1]), pruned
    if any(r[0] == "timeout" for r in results.values()) or len(results) < len(prefixes):
        return ("timeout", None), pruned
    return ("ok", None), pruned


# -- meet in the middle ----------------------------------------------------

def _split_point(radices):
    best, best_m = None, 1
    for m in range(1, len(radices)):
        cost = max(prod(radices[:m]), prod(radices[m:]))
        if best is None or cost < best:
            best, best_m = cost, m
    return best_m


def _partial_sums(H, radices):
    """(sum, digits) over the sub-box, in lexicographic order of digits."""
    cur = [(0, ())]
    for x, r in zip(H, radices):
        cur = [(s + d * x, v + (d,)) for s, v in cur for d in range(r)]
    return cur


def _mitm(H, radices, cap, deadline):
    t = len(H) - 1
    if t == 0:
        return ("hit", (1,)) if H[0] == 0 else ("ok", None)
    m = _split_point(radices)
    if prod(radices[:m]) > cap:
        return ("fallback", None)

    left = {}
    zero_alt = None  # least nonzero left vector with sum 0
    for s, v in _partial_sums(H[:m], radices[:m]):
        if s not in left:
            left[s] = v
        elif s == 0 and zero_alt is None:
            zero_alt = v

    best = None
    # right digits in lexicographic order, built by an odometer
    Hr, Rr = H[m:], radices[m:]
    n = len(Rr)
    d = [0] * n
    r = 0
    counter = 0
    while True:
        L = left.get(-r)
        if L is not None:
            if r == 0 and not any(d):
                L = zero_alt
            if L is not None:
                cand = L + tuple(d)
                if best is None or cand < best:
                    best = cand
        i = n - 1
        while i >= 0:
            if d[i] + 1 < Rr[i]:
                d[i] += 1
                r += Hr[i]
                break
            r -= Hr[i] * (Rr[i] - 1)
            d[i] = 0
            i -= 1
        else:
            break
        counter += 1
        if counter >= _CHECK_EVERY:
            counter = 0
            if deadline is not None and time.monotonic() > deadline:
                return ("timeout", None)
    return ("hit", best) if best is not None else ("ok", None)


# -- public API ------------------------------------------------------------

def verify_level(p, t: int, strategy: str = "exhaustive", *, jobs: int = 1,
                 deadline: float | None = None, budget_ms: int | None = None,
                 deterministic: bool = True,
                 mitm_cap: int = DEFAULT_MITM_CAP) -> LevelResult:
    """Decide whether some nonzero ``w`` in the level-``t`` box has zero sum."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; pick one of {STRATEGIES}")
    if t < 0:
        raise ValueError("level t must be nonnegative")
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    if budget_ms is not None:
        dl = time.monotonic() + budget_ms / 1000
        deadline = dl if deadline is None else min(deadline, dl)

    ps = _terms(p, t + 1)
    H = h_row(t, ps)
    radices = box_radices(t)
    result = LevelResult(t, "ok", strategy, vectors=prod(radices) - 1)

    if strategy == "mitm":
        status, w = _mitm(H, radices, mitm_cap, deadline)
        if status == "fallback":
            result.fallback = f"exhaustive (mitm table would exceed {mitm_cap} entries)"
            log.info("level %d: %s", t, result.fallback)
            (status, w), result.pruned_shards = _exhaustive(
                H, radices, jobs, deadline, deterministic)
    else:
        (status, w), result.pruned_shards = _exhaustive(
            H, radices, jobs, deadline, deterministic)

    if status == "hit":
        cex = Counterexample(t, tuple(w), sum(x * y for x, y in zip(w, H)))
        if not check_counterexample(ps, cex):
            raise AssertionError(f"search produced an invalid counterexample {cex}")
        result.verdict = "counterexample"
        result.counterexample = cex
    elif status == "timeout":
        result.verdict = "indeterminate"
    return result


def verify_range(p, t_max: int, strategy: str = "exhaustive", *, jobs: int = 1,
                 budget_ms: int | None = None, deterministic: bool = True,
                 mitm_cap: int = DEFAULT_MITM_CAP) -> SnzCertificate:
    """Verify levels ``0..t_max`` in order; stop at the first non-ok level."""
    if t_max < 0:
        raise ValueError("t_max must be nonnegative")
    ps = _terms(p, t_max + 1)
    start = time.monotonic()
    deadline = None if budget_ms is None else start + budget_ms / 1000
    cert = SnzCertificate(ps, t_max, strategy)
    for t in range(t_max + 1):
        lv = verify_level(ps, t, strategy, jobs=jobs, deadline=deadline,
                          deterministic=deterministic, mitm_cap=mitm_cap)
        cert.levels.append(lv)
        log.info("level %d: %s", t, lv.verdict)
        if lv.verdict == "counterexample":
            cert.counterexample = lv.counterexample
            break
        if lv.verdict == "indeterminate":
            break
    if not deterministic:
        cert.ms = int((time.monotonic() - start) * 1000)
    return cert


def recheck_certificate(cert: dict, p, *, strategy: str = "mitm",
                        jobs: int = 1) -> bool:
    """Re-validate a certificate JSON against ``p``.

    The digest must match, a reported counterexample must re-check exactly,
    and every level claimed ok is re-decided with ``strategy``.
    """
    if cert.get("schema") != "snzlab/1":
        return False
    t_max = cert["t_max"]
    ps = _terms(p, t_max + 1)
    if cert["p_digest"] != p_digest(ps) or cert["p"] != [int_to_str(x) for x in ps]:
        return False
    if cert["counterexample"] is not None:
        c = cert["counterexample"]
        cex = Counterexample(c["t"], tuple(int(x) for x in c["w"]), int(c["sum"]))
        if not check_counterexample(ps, cex):
            return False
    for lv in cert["levels"]:
        if lv["verdict"] == "ok":
            if verify_level(ps, lv["t"], strategy, jobs=jobs).verdict != "ok":
                return False
    return True
