"""Exact checks of the linear algebra behind the growth theorem.

Everything here is rational arithmetic on small matrices:

* ``M[j][k] = (-1)^(k-j) C(t-j, t-k)`` with columns ``v_k`` and the dual
  family ``u_i[j] = C(t-i, t-j)``;
* the coefficients ``b_k = <w, v_k>`` of a weight vector in the ``u`` basis;
* the ratio matrix ``P~[i][j] = C(t-i, t-j) / C(t, j)`` and its two-sided
  power bounds;
* the Gram matrix ``Q[a][b] = sum_l (l/(s+2))^(a+b)`` of the evaluation
  form at the nodes ``l/(s+2)``, ``l = 1..s+1``.

Checks return :class:`Check` records; none of them use floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .charge import WeightVector
from .numerics import binom, exp_bounds, rat_to_str

__all__ = [
    "Check",
    "DualBasisData",
    "BCoefficients",
    "RatioMatrix",
    "QuadraticForm",
    "build_dual_basis",
    "check_dual_basis",
    "recover_b",
    "build_ptilde",
    "check_sandwich",
    "sample_points",
    "check_vandermonde_error",
    "build_q",
    "q_spectral_report",
    "check_bbound",
    "det",
    "leading_minors",
    "is_psd",
]


@dataclass
class Check:
    check: str
    params: dict
    ok: bool
    margin: Fraction | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "verdict": "pass" if self.ok else "fail",
            "margin": None if self.margin is None else rat_to_str(self.margin),
            "details": self.details,
        }


# -- dual basis ------------------------------------------------------------

@dataclass(frozen=True)
class DualBasisData:
    t: int
    M: tuple  # rows j, columns k
    u: tuple  # u[i] is a tuple of length t+1

    def v(self, k: int) -> tuple:
        return tuple(row[k] for row in self.M)


def build_dual_basis(t: int) -> DualBasisData:
    if t < 0:
        raise ValueError("t must be nonnegative")
    M = tuple(
        tuple((-1) ** ((k - j) % 2) * binom(t - j, t - k) for k in range(t + 1))
        for j in range(t + 1)
    )
    u = tuple(
        tuple(binom(t - i, t - j) for j in range(t + 1)) for i in range(t + 1)
    )
    return DualBasisData(t, M, u)


def _dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def check_dual_basis(t: int) -> bool:
    """``<u_i, v_k> == [i == k]`` for all ``0 <= i, k <= t``."""
    d = build_dual_basis(t)
    vs = [d.v(k) for k in range(t + 1)]
    return all(
        _dot(d.u[i], vs[k]) == (1 if i == k else 0)
        for i in range(t + 1) for k in range(t + 1)
    )


@dataclass(frozen=True)
class BCoefficients:
    t: int
    s: int
    b: tuple  # b_0 .. b_s, b_s != 0

    def poly(self, x):
        """``R(x) = sum_i b_i x^i``."""
        acc = 0
        for c in reversed(self.b):
            acc = acc * x + c
        return acc

    @property
    def l1(self) -> int:
        return sum(abs(c) for c in self.b)


def recover_b(w) -> BCoefficients:
    """Coordinates of ``w`` in the ``u`` basis: ``b_k = <w, v_k>``."""
    if not isinstance(w, WeightVector):
        w = WeightVector(len(w) - 1, tuple(w))
    if w.is_zero:
        raise ValueError("recover_b needs a nonzero weight vector")
    d = build_dual_basis(w.t)
    full = [_dot(w.w, d.v(k)) for k in range(w.t + 1)]
    s = max(k for k, x in enumerate(full) if x != 0)
    out = BCoefficients(w.t, s, tuple(full[: s + 1]))
    # reconstruction must be exact
    rebuilt = [sum(out.b[i] * d.u[i][j] for i in range(s + 1)) for j in range(w.t + 1)]
    assert tuple(rebuilt) == w.w, "dual-basis reconstruction failed"
    return out


# -- the ratio matrix --------------------------------------------------------

@dataclass(frozen=True)
class RatioMatrix:
    t: int
    rows: tuple  # rows[i][j] = C(t-i, t-j) / C(t, j)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)


def _ptilde(t: int, i: int, j: int) -> Fraction:
    return Fraction(binom(t - i, t - j), binom(t, j))


def build_ptilde(t: int, s: int | None = None) -> RatioMatrix:
    """Rows ``0..s`` (default all ``t+1``) of the ratio matrix."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    s = t if s is None else s
    if not 0 <= s <= t:
        raise ValueError(f"need 0 <= s <= t, got s={s}, t={t}")
    return RatioMatrix(t, tuple(
        tuple(_ptilde(t, i, j) for j in range(t + 1)) for i in range(s + 1)
    ))


def check_sandwich(t: int, s: int) -> Check:
    """``((j-i+1)/t)^i <= P~[i][j] <= (j/(t-i+1))^i`` for ``0 < i <= s``, ``i < j``, ``i < t-j``."""
    if t < 1 or not 0 <= s <= t:
        raise ValueError(f"need t >= 1 and 0 <= s <= t, got t={t}, s={s}")
    violations = []
    margin = None
    cells = 0
    for i in range(1, s + 1):
        for j in range(i + 1, t - i):
            cells += 1
            val = _ptilde(t, i, j)
            lo = Fraction(j - i + 1, t) ** i
            hi = Fraction(j, t - i + 1) ** i
            slack = min(val - lo, hi - val)
            margin = slack if margin is None else min(margin, slack)
            if slack < 0:
                violations.append({"i": i, "j": j, "value": rat_to_str(val)})
    return Check("sandwich", {"t": t, "s": s}, not violations, margin,
                 {"cells": cells, "violations": violations})


# -- sample points and the Vandermonde proximity ----------------------------

def sample_points(t: int, s: int) -> list[tuple[int, tuple]]:
    """``(lambda_l, y_l)`` for ``l = 1..s+1``: ``lambda_l = floor(l t / (s+2))``
    and ``y_l`` its ratio-matrix column restricted to rows ``0..s``."""
    if s < 0 or t <= (s + 2) ** 2:
        raise ValueError(f"sample points need s >= 0 and t > (s+2)^2, got t={t}, s={s}")
    out = []
    for ell in range(1, s + 2):
        lam = ell * t // (s + 2)
        out.append((lam, tuple(_ptilde(t, i, lam) for i in range(s + 1))))
    return out


def check_vandermonde_error(t: int, s: int, terms: int = 30) -> Check:
    """At each sample point, ``(l/(s+2))^i e^(-4s^3/t) <= P~ <= (l/(s+2))^i e^(4s^3/t)``.

    The exponentials are replaced by certified rational bounds, so a pass is
    a proof of the inequality at these ``(t, s)``.
    """
    if s < 1:
        raise ValueError("the proximity check assumes s >= 1")
    if t < 4 * (s + 2) ** 2:
        raise ValueError(f"need t >= 4(s+2)^2 = {4 * (s + 2) ** 2}, got t={t}")
    x = Fraction(4 * s ** 3, t)
    down = exp_bounds(-x, terms)[0]  # below e^{-x}
    up = exp_bounds(x, terms)[1]  # above e^{x}
    margin = None
    bad = []
    cells = 0
    for ell, (lam, col) in enumerate(sample_points(t, s), start=1):
        node = Fraction(ell, s + 2)
        for i, val in enumerate(col):
            cells += 1
            base = node ** i
            lo, hi = base * down, base * up
            slack = min(val - lo, hi - val)
            margin = slack if margin is None else min(margin, slack)
            if slack < 0:
                bad.append({"l": ell, "lambda": lam, "i": i})
    return Check("vandermonde_error", {"t": t, "s": s}, not bad, margin,
                 {"cells": cells, "violations": bad,
                  "exp_lo": rat_to_str(down), "exp_hi": rat_to_str(up)})


# -- the quadratic form ------------------------------------------------------

@dataclass(frozen=True)
class QuadraticForm:
    s: int
    Q: tuple

    def __call__(self, c: Sequence) -> Fraction:
        n = self.s + 1
        return sum(c[a] * self.Q[a][b] * c[b] for a in range(n) for b in range(n))


def build_q(s: int) -> QuadraticForm:
    if s < 0:
        raise ValueError("s must be nonnegative")
    nodes = [Fraction(ell, s + 2) for ell in range(1, s + 2)]
    pw = [sum(x ** e for x in nodes) for e in range(2 * s + 1)]
    return QuadraticForm(s, tuple(
        tuple(pw[a + b] for b in range(s + 1)) for a in range(s + 1)
    ))


def det(A) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in A]
    n = len(m)
    sign = 1
    acc = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        acc *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return sign * acc


def leading_minors(A) -> list[Fraction]:
    return [det([row[:k] for row in A[:k]]) for k in range(1, len(A) + 1)]


def is_psd(A) -> tuple[bool, str]:
    """Exact PSD test: leading minors all positive, else all principal minors >= 0."""
    if all(x > 0 for x in leading_minors(A)):
        return True, "positive definite (leading principal minors > 0)"
    n = len(A)
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            if det([[A[a][b] for b in idx] for a in idx]) < 0:
                return False, f"principal minor on rows {list(idx)} is negative"
    return True, "all principal minors >= 0"


def _shift(Q, lam):
    return [[Q[a][b] - (lam if a == b else 0) for b in range(len(Q))]
            for a in range(len(Q))]


def q_spectral_report(s: int) -> list[Check]:
    """Determinant and smallest-eigenvalue bounds for ``Q``, all exact.

    ``chain`` is ``det(Q) / ((s+1)^2)^(s-1)``: the determinant divided by the
    top-eigenvalue bound raised to ``s - 1``. ``Q`` is ``(s+1) x (s+1)``, so
    ``det(Q) / ((s+1)^2)^s`` is the quotient that provably lower-bounds the
    smallest eigenvalue; both are certified separately.
    """
    if s < 1:
        raise ValueError("spectral report needs s >= 1")
    q = build_q(s).Q
    d = det(q)
    params = {"s": s}
    top = Fraction((s + 1) ** 2)
    det_floor = Fraction(1, (s + 2) ** (2 * s * (s + 1)))
    target = Fraction(1, (10 * s) ** (10 * s * s))
    chain = d / top ** (s - 1)
    full_chain = d / top ** s
    minors = leading_minors(q)

    out = [
        Check("q_positive_definite", params, all(x > 0 for x in minors),
              min(minors), {"leading_minors": [rat_to_str(x) for x in minors]}),
        Check("q_det_floor", params, d >= det_floor, d - det_floor,
              {"det": rat_to_str(d), "floor": rat_to_str(det_floor)}),
        Check("q_top_eigen_bound", params, *_psd_check(_neg_shift(q, top)),
              {"bound": rat_to_str(top)}),
        Check("q_chain_vs_target", params, chain >= target, chain - target,
              {"chain": rat_to_str(chain), "target": rat_to_str(target)}),
    ]
    for name, lam in (("q_minus_chain_psd", chain),
                      ("q_minus_full_chain_psd", full_chain),
                      ("q_minus_target_psd", target)):
        ok, how = is_psd(_shift(q, lam))
        out.append(Check(name, params, ok, None,
                         {"shift": rat_to_str(lam), "method": how}))
    return out


def _neg_shift(Q, lam):
    # lam*I - Q
    return [[(lam if a == b else 0) - Q[a][b] for b in range(len(Q))]
            for a in range(len(Q))]


def _psd_check(A):
    ok, _ = is_psd(A)
    return ok, None


# -- b bound ---------------------------------------------------------------

def check_bbound(t: int, ws: Sequence) -> list[Check]:
    """Per weight vector: ``C = sum |b_i|`` against ``(s+1)^2 t^s`` (certified)
    and, for information, against ``(20s)^(20 s^2)``."""
    out = []
    for w in ws:
        b = recover_b(w if isinstance(w, WeightVector) else WeightVector(t, tuple(w)))
        c = b.l1
        coarse = (b.s + 1) ** 2 * t ** b.s
        out.append(Check(
            "bbound", {"t": t, "w": [str(x) for x in (w.w if isinstance(w, WeightVector) else w)]},
            c <= coarse, Fraction(coarse - c),
            {"s": b.s, "C": str(c), "coarse": str(coarse),
             "within_stated_constant": c <= (20 * b.s) ** (20 * b.s * b.s)},
        ))
    return out
