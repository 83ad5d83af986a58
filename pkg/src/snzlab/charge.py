"""Permutation-invariant integer charges built from a sequence p_0, p_1, ...

A sequence ``p`` fixes ``h(m, n) = sum_i (-1)^i C(n, i) p_{m+i}``, the charge
of any cylinder with ``m`` zero-constraints and ``n`` one-constraints. A clopen
set over a support of size ``t`` then has charge ``sum_j w_j h(j, t - j)``.

Weight-vector convention: ``w_j`` counts patterns with exactly ``j``
coordinates assigned 0. For example ``H({}, {3})`` over support ``{3}`` has
its single pattern ``3 -> 1`` with zero zeros, so ``w = (1, 0)`` and its
charge is ``h(0, 1) = p_0 - p_1``.
"""

from __future__ import annotations

import ast
import logging
import operator
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .clopen import ClopenSet
from .numerics import binom, int_from_str, int_to_str

log = logging.getLogger(__name__)

__all__ = [
    "SequenceTooShort",
    "GreedyBudgetExceeded",
    "PSequence",
    "Explicit",
    "GreedyMinimal",
    "WeightVector",
    "GrowthSpec",
    "h",
    "h_row",
    "weight_vector",
    "charge_of",
    "check_growth",
    "greedy_extend",
    "greedy_candidates",
    "load_pseq",
    "dump_pseq",
]


class SequenceTooShort(ValueError):
    pass


class GreedyBudgetExceeded(RuntimeError):
    pass


# -- sequences -------------------------------------------------------------

class PSequence:
    """Provider of the integers p_0, p_1, ..."""

    def terms(self, n: int) -> list[int]:
        raise NotImplementedError


class Explicit(PSequence):
    def __init__(self, values: Iterable):
        vals = [int_from_str(v) for v in values]
        if not vals:
            raise ValueError("an explicit p-sequence needs at least one term")
        self.values: tuple[int, ...] = tuple(vals)

    def terms(self, n: int) -> list[int]:
        if n > len(self.values):
            raise SequenceTooShort(
                f"need p_0..p_{n - 1} but only {len(self.values)} terms are given"
            )
        return list(self.values[:n])

    def __len__(self):
        return len(self.values)

    def __repr__(self):
        return f"Explicit({list(self.values)})"


class GreedyMinimal(PSequence):
    """Lazily extended greedy-minimal sequence (see :func:`greedy_extend`)."""

    tie_policy = "least-abs-then-positive"

    def __init__(self, t_horizon: int, strategy: str = "mitm",
                 max_candidates: int = 1_000_000):
        if t_horizon < 0:
            raise ValueError("t_horizon must be nonnegative")
        self.t_horizon = t_horizon
        self.strategy = strategy
        self.max_candidates = max_candidates
        self._values: list[int] = []

    def terms(self, n: int) -> list[int]:
        if n > self.t_horizon + 1:
            raise SequenceTooShort(
                f"greedy sequence has horizon {self.t_horizon}; p_{n - 1} requested"
            )
        while len(self._values) < n:
            k = len(self._values)
            self._values.append(
                greedy_extend(self._values, k, strategy=self.strategy,
                              max_candidates=self.max_candidates)
            )
            log.info("greedy p_%d = %d", k, self._values[-1])
        return list(self._values[:n])

    def provenance(self) -> dict:
        return {
            "generator": "greedy-minimal",
            "horizon": self.t_horizon,
            "tie_policy": self.tie_policy,
            "strategy": self.strategy,
        }


def _terms(p, n: int) -> list[int]:
    if isinstance(p, PSequence):
        return p.terms(n)
    vals = list(p)
    if n > len(vals):
        raise SequenceTooShort(
            f"need p_0..p_{n - 1} but only {len(vals)} terms are given"
        )
    return [int(v) for v in vals[:n]]


# -- h and charges ---------------------------------------------------------

def h(m: int, n: int, p) -> int:
    """``sum_{i=0}^{n} (-1)^i C(n, i) p_{m+i}``."""
    if m < 0 or n < 0:
        raise ValueError("h(m, n) needs nonnegative m and n")
    ps = _terms(p, m + n + 1)
    return sum((-1) ** i * binom(n, i) * ps[m + i] for i in range(n + 1))


def h_row(t: int, p) -> list[int]:
    """``[h(j, t - j) for j in 0..t]``: the level-t coefficients."""
    ps = _terms(p, t + 1)
    return [h(j, t - j, ps) for j in range(t + 1)]


@dataclass(frozen=True)
class WeightVector:
    t: int
    w: tuple

    def __post_init__(self):
        w = tuple(int(x) for x in self.w)
        object.__setattr__(self, "w", w)
        if self.t < 0 or len(w) != self.t + 1:
            raise ValueError(f"weight vector for level {self.t} needs {self.t + 1} entries")
        for j, x in enumerate(w):
            if not 0 <= x <= binom(self.t, j):
                raise ValueError(
                    f"w_{j} = {x} outside [0, C({self.t},{j})] = [0, {binom(self.t, j)}]"
                )

    @property
    def is_zero(self) -> bool:
        return not any(self.w)

    def charge(self, p) -> int:
        return sum(x * hv for x, hv in zip(self.w, h_row(self.t, p)))


def weight_vector(u: ClopenSet, coords: Iterable[int] | None = None) -> WeightVector:
    """Zero-count histogram of ``u``'s patterns over ``coords`` (default: support)."""
    if coords is None:
        sup = set(u.support)
    else:
        sup = set(coords)
        if any(not isinstance(c, int) or c < 0 for c in sup):
            raise ValueError("coordinates must be nonnegative integers")
        missing = set(u.support) - sup
        if missing:
            raise ValueError(f"coordinate set misses support coordinates {sorted(missing)}")
    t = len(sup)
    extra = t - len(u.support)
    w = [0] * (t + 1)
    for pat in u.patterns:
        z = pat.count(0)
        # each free coordinate doubles the pattern; i of them set to 0
        for i in range(extra + 1):
            w[z + i] += binom(extra, i)
    return WeightVector(t, tuple(w))


def charge_of(u: ClopenSet, p) -> int:
    return weight_vector(u).charge(p)


# -- growth ----------------------------------------------------------------

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Pow: operator.pow,
}


def _int_expr(src: str) -> Callable[[int], int]:
    """Compile an integer expression in ``k`` (``+ - * // ** ^``, parentheses)."""
    tree = ast.parse(src.replace("^", "**"), mode="eval")

    def ev(node, k):
        if isinstance(node, ast.Expression):
            return ev(node.body, k)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) \
                and not isinstance(node.value, bool):
            return node.value
        if isinstance(node, ast.Name) and node.id == "k":
            return k
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left, k), ev(node.right, k))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand, k)
        raise ValueError(f"unsupported growth expression {src!r}")

    ev(tree, 1)  # validate eagerly
    return lambda k: ev(tree, k)


@dataclass(frozen=True)
class GrowthSpec:
    """Growth function g(k), kept either as ``log2 g(k)`` or as ``g(k)``.

    The default ``f(k) = 2^((100k)^10)`` lives in log space only; ``f(1)``
    alone would need 10^20 bits.
    """

    name: str
    log2: Callable[[int], int] | None = None
    value: Callable[[int], int] | None = None

    @classmethod
    def default(cls) -> "GrowthSpec":
        return cls("default: log2 f(k) = (100k)^10", log2=lambda k: (100 * k) ** 10)

    @classmethod
    def parse(cls, spec: str) -> "GrowthSpec":
        """``default``, ``log2:<expr in k>`` or ``<expr in k>`` (e.g. ``2^k``)."""
        spec = spec.strip()
        if spec == "default":
            return cls.default()
        if spec.startswith("log2:"):
            return cls(spec, log2=_int_expr(spec[5:]))
        return cls(spec, value=_int_expr(spec))


# bitlength beyond which g(k)*S is never built as an integer
MATERIALIZE_BITS = 1 << 32


def check_growth(p, g: GrowthSpec, k_max: int) -> list[dict]:
    """Per-k report on ``|p_k| > g(k) * sum_{i<k} |p_i|`` (and ``p_0 != 0``)."""
    ps = _terms(p, k_max + 1)
    out = [{
        "k": 0,
        "ok": ps[0] != 0,
        "detail": "p_0 != 0" if ps[0] != 0 else "p_0 = 0",
    }]
    acc = abs(ps[0])
    for k in range(1, k_max + 1):
        pk = abs(ps[k])
        entry: dict = {"k": k}
        if g.log2 is not None:
            L = g.log2(k)
            if L < 0:
                raise ValueError(f"log2 g({k}) = {L} is negative")
            need = acc.bit_length() + L  # bitlength of acc * 2^L when acc > 0
            have = pk.bit_length()
            entry["log2_g"] = L
            if acc == 0:
                ok = pk > 0
                entry["detail"] = "exact"
            elif abs(have - need) <= 2:
                ok = pk > (acc << L)
                entry["detail"] = "exact"
            else:
                ok = have > need
                entry["detail"] = "bitlength"
            if need > MATERIALIZE_BITS:
                entry["detail"] = (
                    f"not materializable: requires ~{need} bits "
                    f"(~10^{len(str(need)) - 1})"
                )
        else:
            gk = g.value(k)
            ok = pk > gk * acc
            entry["g"] = int_to_str(gk)
            entry["detail"] = "exact"
        entry["ok"] = ok
        out.append(entry)
        acc += pk
    return out


# -- greedy ----------------------------------------------------------------

def greedy_candidates():
    """0, 1, -1, 2, -2, ...: least absolute value, positive first."""
    yield 0
    n = 1
    while True:
        yield n
        yield -n
        n += 1


def greedy_extend(prefix: Sequence[int], k: int, verifier=None, *,
                  strategy: str = "mitm", max_candidates: int = 1_000_000) -> int:
    """Least-|.| integer p_k keeping level ``k`` strictly nonzero.

    ``verifier(p_list, t)`` must return an object with a ``verdict`` of
    ``"ok"``, ``"counterexample"`` or ``"indeterminate"``; by default the
    level verifier with ``strategy`` is used.
    """
    prefix = [int(x) for x in prefix]
    if k != len(prefix):
        raise ValueError(f"next index must be {len(prefix)}, got {k}")
    if verifier is None:
        from .verifier import verify_level

        def verifier(ps, t):
            return verify_level(ps, t, strategy=strategy)

    for n, cand in enumerate(greedy_candidates()):
        if n >= max_candidates:
            raise GreedyBudgetExceeded(
                f"no admissible p_{k} among the first {max_candidates} candidates"
            )
        res = verifier(prefix + [cand], k)
        if res.verdict == "ok":
            return cand
        if res.verdict != "counterexample":
            raise GreedyBudgetExceeded(f"verifier gave up on p_{k} = {cand}")
    raise AssertionError("unreachable")


# -- file format -----------------------------------------------------------

def load_pseq(obj) -> Explicit:
    """From ``{"p": ["1", "-1", ...]}`` (a dict or JSON text)."""
    import json

    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "p" not in obj or not isinstance(obj["p"], list):
        raise ValueError('p-sequence JSON must look like {"p": ["1", "-1", ...]}')
    return Explicit(obj["p"])


def dump_pseq(values: Sequence[int], provenance: dict | None = None) -> dict:
    out = {"schema": "snzlab/1", "p": [int_to_str(v) for v in values]}
    if provenance is not None:
        out["provenance"] = provenance
    return out
