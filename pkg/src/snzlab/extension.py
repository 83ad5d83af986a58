"""Finite demonstrations around extending integer charges on subsets of N.

* :func:`chain_set` builds the sets ``A_r = {i : q_i < r}`` of a fixed
  enumeration of the rationals; they form a chain indexed by ``r``, so an
  SNZ charge would have to separate continuum many sets with integers.
* :func:`fincof_charge` is the charge ``#A`` / ``-1 - #A^c`` on the
  finite-cofinite algebra of N = {1, 2, ...}.
* :func:`evens_extension_witness` shows that charge has no SNZ extension to
  the algebra generated by the even numbers.
* :func:`pigeonhole_pair` and :func:`build_obstruction` carry out the
  residue-class argument for a disjoint family of sets of equal charge ``a``.

Rationals are enumerated as ``q_1 = 0``, ``q_{2n} = cw(n)``,
``q_{2n+1} = -cw(n)`` where ``cw`` is the Calkin-Wilf sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .numerics import rat_to_str

__all__ = [
    "calkin_wilf",
    "calkin_wilf_index",
    "rational_at",
    "rational_index",
    "chain_set",
    "strict_inclusion_witness",
    "demo_chain",
    "FinCofSet",
    "fincof_charge",
    "ParityElement",
    "EvensWitness",
    "evens_extension_witness",
    "forced_charge",
    "pigeonhole_pair",
    "Obstruction",
    "build_obstruction",
]


# -- rational enumeration ----------------------------------------------------

def calkin_wilf(n: int) -> Fraction:
    """n-th Calkin-Wilf term (1-based): 1, 1/2, 2, 1/3, 3/2, 2/3, 3, ..."""
    if n < 1:
        raise ValueError("Calkin-Wilf index starts at 1")
    a, b = 1, 1  # root 1/1; left child a/(a+b), right child (a+b)/b
    for bit in bin(n)[3:]:
        if bit == "0":
            b = a + b
        else:
            a = a + b
    return Fraction(a, b)


def calkin_wilf_index(q) -> int:
    """Inverse of :func:`calkin_wilf` for positive rationals."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("Calkin-Wilf indexes positive rationals only")
    a, b = q.numerator, q.denominator
    bits = []
    while (a, b) != (1, 1):
        if a < b:
            k = (b - 1) // a
            bits.append(("0", k))
            b -= k * a
        else:
            k = (a - 1) // b
            bits.append(("1", k))
            a -= k * b
    n = 1
    for bit, k in reversed(bits):
        for _ in range(k):
            n = 2 * n + (bit == "1")
    return n


def rational_at(i: int) -> Fraction:
    if i < 1:
        raise ValueError("rational enumeration starts at 1")
    if i == 1:
        return Fraction(0)
    q = calkin_wilf(i // 2)
    return q if i % 2 == 0 else -q


def rational_index(q) -> int:
    q = Fraction(q)
    if q == 0:
        return 1
    if q > 0:
        return 2 * calkin_wilf_index(q)
    return 2 * calkin_wilf_index(-q) + 1


def chain_set(r, n: int) -> frozenset:
    """``{i <= n : q_i < r}``."""
    if n < 1:
        raise ValueError("truncation n must be >= 1")
    r = Fraction(r)
    return frozenset(i for i in range(1, n + 1) if rational_at(i) < r)


def _mediant(x: Fraction, y: Fraction) -> Fraction:
    return Fraction(x.numerator + y.numerator, x.denominator + y.denominator)


def strict_inclusion_witness(r, r2) -> int:
    """An index ``i`` with ``i`` in ``A_{r2}`` but not ``A_r`` (needs ``r < r2``).

    Every truncation ``n >= i`` then shows ``A_r`` strictly inside ``A_{r2}``.
    """
    r, r2 = Fraction(r), Fraction(r2)
    if not r < r2:
        raise ValueError("need r < r2")
    return rational_index(_mediant(r, r2))


def demo_chain(rs: Iterable) -> dict:
    """Truncated chain ``A_r`` for increasing rationals ``rs``.

    Consecutive sets differ by a nonempty set, so an SNZ charge gives each a
    distinct value; there are continuum many ``r``, but only countably many
    integers.
    """
    rs = sorted(set(Fraction(x) for x in rs))
    if len(rs) < 2:
        raise ValueError("need at least two distinct rationals")
    witnesses = [strict_inclusion_witness(a, b) for a, b in zip(rs, rs[1:])]
    n = max(witnesses)
    sets = [chain_set(r, n) for r in rs]
    for small, big in zip(sets, sets[1:]):
        assert small < big
    return {
        "schema": "snzlab/1",
        "truncation": n,
        "chain": [
            {"r": rat_to_str(r), "size": len(s)} for r, s in zip(rs, sets)
        ],
        "witnesses": [
            {"between": [rat_to_str(a), rat_to_str(b)], "index": i,
             "q_i": rat_to_str(rational_at(i))}
            for (a, b), i in zip(zip(rs, rs[1:]), witnesses)
        ],
        "strictly_increasing": True,
        "note": (
            "distinct members of the chain differ by a nonempty set, so an SNZ "
            "charge must take pairwise distinct values on them; the chain over all "
            "reals has continuum many members and Z is countable"
        ),
    }


# -- finite-cofinite algebra -------------------------------------------------

@dataclass(frozen=True)
class FinCofSet:
    """A finite subset of N = {1, 2, ...}, or the complement of one."""

    cofinite: bool
    elems: frozenset = frozenset()  # the set itself, or its complement

    def __post_init__(self):
        es = frozenset(self.elems)
        if any(not isinstance(x, int) or x < 1 for x in es):
            raise ValueError("elements must be positive integers")
        object.__setattr__(self, "elems", es)

    @classmethod
    def finite(cls, xs: Iterable[int] = ()) -> "FinCofSet":
        return cls(False, frozenset(xs))

    @classmethod
    def cofinite_of(cls, missing: Iterable[int] = ()) -> "FinCofSet":
        return cls(True, frozenset(missing))

    def __contains__(self, x: int) -> bool:
        return (x not in self.elems) if self.cofinite else (x in self.elems)

    def complement(self) -> "FinCofSet":
        return FinCofSet(not self.cofinite, self.elems)

    def union(self, other: "FinCofSet") -> "FinCofSet":
        if not self.cofinite and not other.cofinite:
            return FinCofSet.finite(self.elems | other.elems)
        if self.cofinite and other.cofinite:
            return FinCofSet.cofinite_of(self.elems & other.elems)
        fin, cof = (self, other) if other.cofinite else (other, self)
        return FinCofSet.cofinite_of(cof.elems - fin.elems)

    def intersection(self, other: "FinCofSet") -> "FinCofSet":
        return self.complement().union(other.complement()).complement()

    def isdisjoint(self, other: "FinCofSet") -> bool:
        x = self.intersection(other)
        return not x.cofinite and not x.elems


def fincof_charge(A: FinCofSet) -> int:
    """``#A`` for finite ``A``, ``-1 - #(N \\ A)`` for cofinite ``A``."""
    return -1 - len(A.elems) if A.cofinite else len(A.elems)


# -- the evens exercise ------------------------------------------------------

@dataclass(frozen=True)
class ParityElement:
    """``(E ∩ X) ∪ (O ∩ Y)`` with ``X``, ``Y`` finite or cofinite.

    Every element of the algebra generated by the finite-cofinite sets and
    the evens ``E`` has this form (``O`` are the odd numbers).
    """

    even: FinCofSet
    odd: FinCofSet

    def __post_init__(self):
        for part, par in ((self.even, 0), (self.odd, 1)):
            if any(x % 2 != par for x in part.elems):
                raise ValueError("listed elements must have the part's parity")

    def is_empty(self) -> bool:
        return not any(p.cofinite or p.elems for p in (self.even, self.odd))

    def describe(self) -> str:
        parts = []
        for name, p in (("E", self.even), ("O", self.odd)):
            if p.cofinite:
                removed = sorted(p.elems)
                parts.append(name if not removed else
                             f"{name} \\ {{{', '.join(map(str, removed))}}}")
            elif p.elems:
                parts.append("{" + ", ".join(map(str, sorted(p.elems))) + "}")
        return " ∪ ".join(parts) if parts else "∅"


def forced_charge(x: ParityElement, e: int) -> int:
    """Charge of ``x`` forced by additivity once ``mu(E) = e``.

    ``mu(O) = mu(N) - mu(E) = -1 - e``; removing a finite set from a parity
    class subtracts its size; finite parts count their elements.
    """
    total = 0
    for p, whole in ((x.even, e), (x.odd, -1 - e)):
        total += (whole - len(p.elems)) if p.cofinite else len(p.elems)
    return total


@dataclass
class EvensWitness:
    e: int
    element: ParityElement
    forced: int
    derivation: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": "snzlab/1",
            "e": self.e,
            "witness": self.element.describe(),
            "nonempty": not self.element.is_empty(),
            "forced_charge": self.forced,
            "derivation": self.derivation,
        }


def evens_extension_witness(e: int) -> EvensWitness:
    """A nonempty set whose charge is forced to 0 when ``mu(E) = e``."""
    e = int(e)
    none = FinCofSet.finite()
    if e >= 0:
        removed = range(2, 2 * e + 1, 2)
        el = ParityElement(FinCofSet.cofinite_of(removed), none)
        steps = [f"mu(E) = {e}",
                 f"mu(E \\ S) = mu(E) - #S for finite S ⊂ E; #S = {e}",
                 f"mu = {e} - {e} = 0"]
    else:
        k = -1 - e
        removed = range(1, 2 * k, 2)
        el = ParityElement(none, FinCofSet.cofinite_of(removed))
        steps = [f"mu(E) = {e}",
                 f"mu(O) = mu(N) - mu(E) = -1 - ({e}) = {k}",
                 f"mu(O \\ S) = mu(O) - #S for finite S ⊂ O; #S = {k}",
                 f"mu = {k} - {k} = 0"]
    return EvensWitness(e, el, forced_charge(el, e), steps)


# -- residue-class obstruction ----------------------------------------------

def _check_values(values: Sequence[int], a: int):
    if a < 1:
        raise ValueError("a must be a positive integer")
    if len(values) != a + 1:
        raise ValueError(f"need exactly a+1 = {a + 1} values, got {len(values)}")
    if len(set(values)) != len(values):
        raise ValueError("values must be pairwise distinct")


def pigeonhole_pair(values: Sequence[int], a: int) -> tuple[int, int]:
    """Least (1-based) ``l < m`` with ``values[l] ≡ values[m] (mod a)``."""
    values = [int(v) for v in values]
    _check_values(values, a)
    seen: dict[int, int] = {}
    best = None
    for idx, v in enumerate(values, start=1):
        r = v % a
        if r in seen:
            cand = (seen[r], idx)
            if best is None or cand < best:
                best = cand
        else:
            seen[r] = idx
    assert best is not None, "pigeonhole cannot fail on a+1 values"
    return best


@dataclass
class Obstruction:
    a: int
    values: tuple
    l: int
    m: int
    p: int
    mu_F: int
    mu_G: int
    sign_consistent: bool
    narrative: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": "snzlab/1",
            "a": self.a,
            "values": [str(v) for v in self.values],
            "pair": [self.l, self.m],
            "p": self.p,
            "mu_F": str(self.mu_F),
            "mu_G": str(self.mu_G),
            "sign_consistent": self.sign_consistent,
            "narrative": self.narrative,
        }


def build_obstruction(a: int, values: Sequence[int]) -> Obstruction:
    """Residue-class argument against an SNZ extension.

    ``A_1, A_2, ...`` are disjoint with ``mu(A_i) = a``. Index families
    ``D_k = {i : (i-1) mod (|a|+1) < k}`` increase with infinite differences,
    so ``E_k = ∪_{i ∈ D_k} A_i`` increase strictly and an extension would give
    them ``|a|+1`` distinct values (``values[k-1]``). Two of those agree
    modulo ``a``; ``F = E_m \\ E_l`` then has charge ``values[m] - values[l]``.
    When that equals ``p·a`` with ``p >= 1``, a union ``G`` of ``p`` of the
    ``A_i`` inside ``F`` has the same charge, and ``F \\ G`` is a nonempty set
    of charge 0.
    """
    a = int(a)
    if a == 0:
        raise ValueError("a must be nonzero (an SNZ charge never gives a nonempty set 0)")
    values = tuple(int(v) for v in values)
    k = abs(a)
    l, m = pigeonhole_pair(values, k)
    diff = values[m - 1] - values[l - 1]
    p = abs(diff) // k
    mod = k + 1
    F_classes = list(range(l, m))  # residues (i-1) mod (|a|+1) of D_m \ D_l
    G_idx = []
    i = 1
    while len(G_idx) < p:
        if (i - 1) % mod in F_classes:
            G_idx.append(i)
        i += 1
    consistent = diff == p * a
    narrative = [
        f"D_k = {{i >= 1 : (i-1) mod {mod} < k}} for k = 1..{mod}; "
        "each D_(k+1) \\ D_k is an infinite residue class",
        f"E_k = union of A_i over D_k; E_1 ⊊ ... ⊊ E_{mod}",
        f"values mu(E_k) = {list(values)}",
        f"pigeonhole mod {k}: mu(E_{l}) = {values[l - 1]} ≡ mu(E_{m}) = {values[m - 1]}",
        f"F = E_{m} \\ E_{l} = union of A_i with (i-1) mod {mod} in {F_classes}; "
        f"mu(F) = {diff}",
        f"G = A_i for i in {G_idx}; G ⊊ F; mu(G) = {p} * {a} = {p * a}",
    ]
    if consistent:
        narrative.append("mu(F \\ G) = mu(F) - mu(G) = 0 with F \\ G nonempty: not SNZ")
    else:
        narrative.append(
            f"mu(F) = {diff} has the opposite sign to a = {a}, so no union of "
            "A_i inside F matches it; this pair does not close the argument"
        )
    return Obstruction(a, values, l, m, p, diff, p * a, consistent, narrative)
