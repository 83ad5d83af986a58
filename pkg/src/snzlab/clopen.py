"""Clopen subsets of Cantor space {0,1}^N.

A :class:`ClopenSet` is a finite support ``C`` (sorted coordinates) plus an
explicit set of total assignments ``C -> {0,1}``. Distinct patterns over the
same support denote disjoint cylinders, so a set is literally a disjoint
union of ``H(A, B)`` with ``A ∪ B = C``.

Canonical sets carry the minimal support: every coordinate the membership
predicate actually depends on, and nothing else. Equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping

__all__ = [
    "DEFAULT_SUPPORT_LIMIT",
    "Cylinder",
    "ClopenSet",
    "FinPermutation",
    "EMPTY",
    "FULL",
    "from_cylinder",
    "union",
    "intersect",
    "difference",
    "complement",
    "expand_support",
    "apply_permutation",
]

DEFAULT_SUPPORT_LIMIT = 24

Pattern = tuple  # tuple[int, ...] of 0/1, aligned with ClopenSet.support


def _check_coord(c) -> int:
    if isinstance(c, bool) or not isinstance(c, int) or c < 0:
        raise ValueError(f"coordinates must be nonnegative integers, got {c!r}")
    return c


@dataclass(frozen=True)
class Cylinder:
    """``H(A, B)``: points that are 0 on ``zeros`` and 1 on ``ones``."""

    zeros: frozenset
    ones: frozenset

    def __init__(self, zeros: Iterable[int] = (), ones: Iterable[int] = ()):
        z = frozenset(_check_coord(c) for c in zeros)
        o = frozenset(_check_coord(c) for c in ones)
        overlap = z & o
        if overlap:
            raise ValueError(
                f"H(A,B) needs disjoint A and B; both contain {sorted(overlap)}"
            )
        object.__setattr__(self, "zeros", z)
        object.__setattr__(self, "ones", o)


class ClopenSet:
    """Immutable clopen set; see module docstring for the representation."""

    __slots__ = ("support", "patterns", "_hash")

    def __init__(self, support: Iterable[int], patterns: Iterable[Pattern],
                 *, canonical: bool = True,
                 limit: int = DEFAULT_SUPPORT_LIMIT):
        sup = tuple(sorted(set(_check_coord(c) for c in support)))
        if len(sup) > limit:
            raise ValueError(
                f"support of size {len(sup)} exceeds the limit {limit}"
            )
        pats = set()
        for p in patterns:
            p = tuple(int(b) for b in p)
            if len(p) != len(sup) or any(b not in (0, 1) for b in p):
                raise ValueError(f"pattern {p} does not fit support {sup}")
            pats.add(p)
        if canonical:
            sup, pats = _minimize(sup, pats)
        self.support: tuple[int, ...] = sup
        self.patterns: tuple[Pattern, ...] = tuple(sorted(pats))
        self._hash = None

    # -- basic protocol -------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, ClopenSet):
            return NotImplemented
        return self.support == other.support and self.patterns == other.patterns

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.support, self.patterns))
        return self._hash

    def __repr__(self):
        from .lang import format_set

        return f"ClopenSet({format_set(self)!r})"

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __sub__(self, other):
        return difference(self, other)

    def __invert__(self):
        return complement(self)

    @property
    def is_empty(self) -> bool:
        return not self.patterns

    @property
    def is_full(self) -> bool:
        return not self.support and bool(self.patterns)

    def contains(self, point: Mapping[int, int]) -> bool:
        """Membership of a point given as ``{coord: bit}`` (must cover support)."""
        key = tuple(int(point[c]) for c in self.support)
        return key in set(self.patterns)

    def cylinders(self) -> Iterator[Cylinder]:
        """The disjoint cylinders ``H(A, B)`` making up this set."""
        for p in self.patterns:
            yield Cylinder(
                [c for c, b in zip(self.support, p) if b == 0],
                [c for c, b in zip(self.support, p) if b == 1],
            )

    def to_json(self) -> dict:
        return {
            "support": list(self.support),
            "patterns": ["".join(map(str, p)) for p in self.patterns],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "ClopenSet":
        support = list(obj["support"])
        pats = []
        for s in obj["patterns"]:
            if any(ch not in "01" for ch in s):
                raise ValueError(f"bad pattern string {s!r}")
            pats.append(tuple(int(ch) for ch in s))
        return cls(support, pats)


def _minimize(sup: tuple, pats: set) -> tuple[tuple, set]:
    """Drop every coordinate the membership predicate ignores."""
    i = 0
    while i < len(sup):
        redundant = all(
            p[:i] + (1 - p[i],) + p[i + 1:] in pats for p in pats
        )
        if redundant:
            pats = {p[:i] + p[i + 1:] for p in pats if p[i] == 0}
            sup = sup[:i] + sup[i + 1:]
            # removing one coordinate never makes another one essential
        else:
            i += 1
    return sup, pats


EMPTY = ClopenSet((), ())
FULL = ClopenSet((), [()])


def from_cylinder(c: Cylinder) -> ClopenSet:
    sup = sorted(c.zeros | c.ones)
    pattern = tuple(0 if x in c.zeros else 1 for x in sup)
    return ClopenSet(sup, [pattern])


def _expand(u: ClopenSet, sup: tuple) -> set:
    """Patterns of ``u`` re-expressed over the superset ``sup``."""
    pos = {c: k for k, c in enumerate(sup)}
    fixed = [pos[c] for c in u.support]
    own = set(u.support)
    free = [k for k, c in enumerate(sup) if c not in own]
    out = set()
    for p in u.patterns:
        base = [0] * len(sup)
        for k, b in zip(fixed, p):
            base[k] = b
        for bits in product((0, 1), repeat=len(free)):
            for k, b in zip(free, bits):
                base[k] = b
            out.add(tuple(base))
    return out


def expand_support(u: ClopenSet, coords: Iterable[int],
                   limit: int = DEFAULT_SUPPORT_LIMIT) -> ClopenSet:
    """Non-canonical view of ``u`` with support exactly ``coords``."""
    sup = tuple(sorted(set(_check_coord(c) for c in coords)))
    missing = set(u.support) - set(sup)
    if missing:
        raise ValueError(
            f"expand_support: target coordinates miss {sorted(missing)}"
        )
    if len(sup) > limit:
        raise ValueError(f"support of size {len(sup)} exceeds the limit {limit}")
    return ClopenSet(sup, _expand(u, sup), canonical=False, limit=limit)


def _binary(u: ClopenSet, v: ClopenSet, op) -> ClopenSet:
    sup = tuple(sorted(set(u.support) | set(v.support)))
    if len(sup) > DEFAULT_SUPPORT_LIMIT:
        raise ValueError(
            f"support of size {len(sup)} exceeds the limit {DEFAULT_SUPPORT_LIMIT}"
        )
    return ClopenSet(sup, op(_expand(u, sup), _expand(v, sup)))


def union(u: ClopenSet, v: ClopenSet) -> ClopenSet:
    return _binary(u, v, set.__or__)


def intersect(u: ClopenSet, v: ClopenSet) -> ClopenSet:
    return _binary(u, v, set.__and__)


def difference(u: ClopenSet, v: ClopenSet) -> ClopenSet:
    return _binary(u, v, set.__sub__)


def complement(u: ClopenSet) -> ClopenSet:
    allp = set(product((0, 1), repeat=len(u.support)))
    return ClopenSet(u.support, allp - set(u.patterns))


class FinPermutation:
    """A permutation of the coordinates moving finitely many points."""

    __slots__ = ("_map",)

    def __init__(self, mapping: Mapping[int, int] | None = None):
        m = {}
        for a, b in (mapping or {}).items():
            _check_coord(a)
            _check_coord(b)
            if a != b:
                m[a] = b
        if set(m) != set(m.values()):
            raise ValueError("mapping is not a bijection on the points it moves")
        self._map = m

    @classmethod
    def swap(cls, i: int, j: int) -> "FinPermutation":
        return cls({i: j, j: i})

    @classmethod
    def from_cycle(cls, *points: int) -> "FinPermutation":
        return cls({a: points[(k + 1) % len(points)] for k, a in enumerate(points)})

    def __call__(self, c: int) -> int:
        return self._map.get(c, c)

    @property
    def moved(self) -> frozenset:
        return frozenset(self._map)

    def inverse(self) -> "FinPermutation":
        return FinPermutation({b: a for a, b in self._map.items()})

    def compose(self, other: "FinPermutation") -> "FinPermutation":
        """``self ∘ other`` (apply ``other`` first)."""
        pts = self.moved | other.moved
        return FinPermutation({c: self(other(c)) for c in pts})

    def __eq__(self, other):
        return isinstance(other, FinPermutation) and self._map == other._map

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def __repr__(self):
        return f"FinPermutation({dict(sorted(self._map.items()))})"


def apply_permutation(u: ClopenSet, pi: FinPermutation) -> ClopenSet:
    """``pi(U) = {f ∘ pi^-1 : f in U}``: the constraint at ``c`` moves to ``pi(c)``."""
    new_sup = [pi(c) for c in u.support]
    order = sorted(range(len(new_sup)), key=new_sup.__getitem__)
    return ClopenSet(
        [new_sup[k] for k in order],
        [tuple(p[k] for k in order) for p in u.patterns],
    )
