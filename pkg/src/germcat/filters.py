"""Finite posets, filters, ultrafilter decisions, and the finite-or-cofinite
algebra on the naturals.

A filter is a nonempty, upward-closed, downward-directed subset of a poset.
Explicit filters live on finite posets and are decided exhaustively; the only
non-principal filter supported is the cofinite ("tail") filter on the
finite-or-cofinite fragment of the subsets of the naturals, where every
membership query stays decidable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from . import budget


class UnknownElement(Exception):
    """A subset mentions a label that is not in the poset."""


class EmptyBase(Exception):
    """Filter generation requires a nonempty base."""


class MeetUnavailable(Exception):
    """The poset lacks a meet needed to close the base."""


class NotAFilter(Exception):
    """The given subset fails the filter axioms."""


def sort_key(value):
    """Total order over the mixed label types used throughout the package."""
    if isinstance(value, bool):
        return (0, value)
    if isinstance(value, int):
        return (1, value)
    if isinstance(value, str):
        return (2, value)
    if isinstance(value, tuple):
        return (3, tuple(sort_key(v) for v in value))
    if isinstance(value, frozenset):
        return (4, tuple(sorted(sort_key(v) for v in value)))
    return (5, repr(value))


@dataclass(frozen=True)
class Poset:
    """Finite poset given by its elements and the full order relation.

    ``pairs`` holds every related pair (x, y) with x <= y, including the
    diagonal. Construction checks reflexivity, antisymmetry and transitivity
    exhaustively, and derives the partial meet operation: meet(x, y) is
    recorded exactly when the pair has a greatest lower bound.
    """

    elements: tuple
    pairs: frozenset
    meets: dict = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        elems = set(self.elements)
        if len(elems) != len(self.elements):
            raise ValueError("duplicate poset elements")
        for x, y in self.pairs:
            if x not in elems or y not in elems:
                raise UnknownElement(f"order pair ({x!r}, {y!r}) outside the poset")
        for x in self.elements:
            if (x, x) not in self.pairs:
                raise ValueError(f"order not reflexive at {x!r}")
        for x, y in self.pairs:
            if x != y and (y, x) in self.pairs:
                raise ValueError(f"order not antisymmetric on {x!r}, {y!r}")
        for x, y in self.pairs:
            for z in self.elements:
                if (y, z) in self.pairs and (x, z) not in self.pairs:
                    raise ValueError("order not transitive")
        object.__setattr__(self, "meets", self._derive_meets())

    @classmethod
    def from_leq(cls, elements: Iterable, leq) -> "Poset":
        """Build from a decidable comparison callable leq(x, y) -> bool."""
        elems = tuple(sorted(elements, key=sort_key))
        pairs = frozenset((x, y) for x in elems for y in elems if leq(x, y))
        return cls(elems, pairs)

    @classmethod
    def chain(cls, labels: Iterable) -> "Poset":
        """Total order with the given labels listed from bottom to top."""
        labels = tuple(labels)
        index = {x: i for i, x in enumerate(labels)}
        return cls.from_leq(labels, lambda x, y: index[x] <= index[y])

    @classmethod
    def powerset(cls, base: Iterable) -> "Poset":
        """P(base) ordered by inclusion; elements are frozensets."""
        base = tuple(base)
        subsets = []
        for r in range(len(base) + 1):
            subsets.extend(frozenset(c) for c in combinations(base, r))
        return cls.from_leq(subsets, lambda x, y: x <= y)

    def _derive_meets(self) -> dict:
        meets = {}
        for x in self.elements:
            for y in self.elements:
                lower = [z for z in self.elements if (z, x) in self.pairs and (z, y) in self.pairs]
                greatest = [z for z in lower if all((w, z) in self.pairs for w in lower)]
                if greatest:
                    meets[(x, y)] = greatest[0]
        return meets

    def leq(self, x, y) -> bool:
        if x not in self.element_set or y not in self.element_set:
            raise UnknownElement(f"{x!r} or {y!r} not in poset")
        return (x, y) in self.pairs

    @property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def meet(self, x, y):
        """Greatest lower bound, or raise MeetUnavailable."""
        try:
            return self.meets[(x, y)]
        except KeyError:
            raise MeetUnavailable(f"no meet of {x!r} and {y!r}") from None

    def has_all_meets(self) -> bool:
        return len(self.meets) == len(self.elements) ** 2

    def upward_closure(self, subset: Iterable) -> frozenset:
        subset = frozenset(subset)
        return frozenset(y for y in self.elements if any((x, y) in self.pairs for x in subset))

    def maximum(self):
        """Maximum element if one exists, else None."""
        for x in self.elements:
            if all((y, x) in self.pairs for y in self.elements):
                return x
        return None


@dataclass(frozen=True)
class DefinableSubset:
    """Finite-or-cofinite subset of the naturals.

    ``tail=False`` means the subset is exactly ``exceptions``; ``tail=True``
    means the naturals minus ``exceptions``. Closed under complement and
    finite unions/intersections, with membership decided by a lookup.
    """

    exceptions: frozenset
    tail: bool

    def __post_init__(self):
        object.__setattr__(self, "exceptions", frozenset(self.exceptions))
        for n in self.exceptions:
            if not isinstance(n, int) or n < 0:
                raise ValueError(f"not a natural number: {n!r}")

    @classmethod
    def finite(cls, members: Iterable[int]) -> "DefinableSubset":
        return cls(frozenset(members), False)

    @classmethod
    def cofinite(cls, excluded: Iterable[int]) -> "DefinableSubset":
        return cls(frozenset(excluded), True)

    @classmethod
    def naturals(cls) -> "DefinableSubset":
        return cls(frozenset(), True)

    @classmethod
    def empty(cls) -> "DefinableSubset":
        return cls(frozenset(), False)

    def contains(self, n: int) -> bool:
        return (n in self.exceptions) != self.tail

    @property
    def is_cofinite(self) -> bool:
        return self.tail

    def complement(self) -> "DefinableSubset":
        return DefinableSubset(self.exceptions, not self.tail)

    def intersect(self, other: "DefinableSubset") -> "DefinableSubset":
        if not self.tail and not other.tail:
            return DefinableSubset(self.exceptions & other.exceptions, False)
        if self.tail and other.tail:
            return DefinableSubset(self.exceptions | other.exceptions, True)
        fin, cof = (self, other) if not self.tail else (other, self)
        return DefinableSubset(frozenset(n for n in fin.exceptions if n not in cof.exceptions), False)

    def union(self, other: "DefinableSubset") -> "DefinableSubset":
        return self.complement().intersect(other.complement()).complement()

    def issubset(self, other: "DefinableSubset") -> bool:
        return self.intersect(other) == self

    def with_member(self, n: int, present: bool) -> "DefinableSubset":
        """Point edit: force n in or out of the subset."""
        if self.contains(n) == present:
            return self
        if present == self.tail:
            return DefinableSubset(self.exceptions - {n}, self.tail)
        return DefinableSubset(self.exceptions | {n}, self.tail)

    def to_json(self) -> dict:
        return {"exceptions": sorted(self.exceptions), "cofinite": self.tail}

    @classmethod
    def from_json(cls, data: dict) -> "DefinableSubset":
        return cls(frozenset(data["exceptions"]), bool(data["cofinite"]))


FRECHET = "frechet"
EXPLICIT = "explicit"
PRINCIPAL_DEFINABLE = "principal-definable"


@dataclass(frozen=True)
class Filter:
    """A filter, either listed explicitly on a finite poset, or the cofinite
    filter on the naturals, or the principal filter at a definable subset.

    Explicit filters record their minimum member on construction: every
    finite filter is downward directed, hence principal, and the minimum is
    the canonical stage at which filtered colimits over the filter evaluate.
    """

    kind: str
    poset: Poset | None = None
    members: frozenset | None = None
    generator: DefinableSubset | None = None
    minimum: object = field(default=None)

    def __post_init__(self):
        if self.kind == EXPLICIT:
            if not is_filter(self.poset, self.members):
                raise NotAFilter(f"{set(self.members)!r} is not a filter")
            object.__setattr__(self, "minimum", _minimum_member(self.poset, self.members))
        elif self.kind == FRECHET:
            pass
        elif self.kind == PRINCIPAL_DEFINABLE:
            if self.generator is None:
                raise ValueError("principal filter needs a generating subset")
            object.__setattr__(self, "minimum", self.generator)
        else:
            raise ValueError(f"unknown filter kind {self.kind!r}")

    @classmethod
    def explicit(cls, poset: Poset, members: Iterable) -> "Filter":
        return cls(EXPLICIT, poset=poset, members=frozenset(members))

    @classmethod
    def upward(cls, poset: Poset, element) -> "Filter":
        """Principal filter at a poset element."""
        return cls.explicit(poset, poset.upward_closure({element}))

    @classmethod
    def frechet(cls) -> "Filter":
        return cls(FRECHET)

    @classmethod
    def principal_definable(cls, generator: DefinableSubset) -> "Filter":
        return cls(PRINCIPAL_DEFINABLE, generator=generator)

    def contains(self, member) -> bool:
        if self.kind == EXPLICIT:
            return member in self.members
        if self.kind == FRECHET:
            return frechet_contains(member)
        return self.generator.issubset(member)

    @property
    def is_explicit(self) -> bool:
        return self.kind == EXPLICIT

    def is_proper(self) -> bool:
        if self.kind == EXPLICIT:
            return self.members != self.poset.element_set
        return True


def is_filter(p: Poset, s: Iterable) -> bool:
    """Decide the three filter axioms for a subset of a finite poset."""
    s = frozenset(s)
    missing = s - p.element_set
    if missing:
        raise UnknownElement(f"labels not in poset: {sorted(missing, key=sort_key)!r}")
    if not s:
        return False
    for x in s:
        for y in p.elements:
            if (x, y) in p.pairs and y not in s:
                return False
    for x in s:
        for y in s:
            if not any((z, x) in p.pairs and (z, y) in p.pairs for z in s):
                return False
    return True


def _minimum_member(p: Poset, members: frozenset):
    mins = [m for m in members if all((m, x) in p.pairs for x in members)]
    if not mins:
        raise NotAFilter("finite filter without a minimum member")
    return mins[0]


def generate_filter(p: Poset, base: Iterable) -> Filter:
    """Smallest filter containing ``base``: close under finite meets, then
    upward."""
    closure = frozenset(base)
    if not closure:
        raise EmptyBase("cannot generate a filter from an empty base")
    missing = closure - p.element_set
    if missing:
        raise UnknownElement(f"labels not in poset: {sorted(missing, key=sort_key)!r}")
    while True:
        new = frozenset(p.meet(x, y) for x in closure for y in closure)
        if new <= closure:
            break
        closure |= new
    return Filter.explicit(p, p.upward_closure(closure))


def enumerate_filters(p: Poset) -> Iterator[frozenset]:
    """All subsets of the poset that satisfy the filter axioms, brute force.

    Exponential in the poset size; intended for posets of at most ~16
    elements (budget-checked).
    """
    elems = list(p.elements)
    up = {x: frozenset(y for y in elems if (x, y) in p.pairs) for x in elems}
    for mask in range(1, 1 << len(elems)):
        budget.check()
        s = frozenset(e for i, e in enumerate(elems) if mask >> i & 1)
        if any(not up[x] <= s for x in s):
            continue
        if is_filter(p, s):
            yield s


def is_ultrafilter(p: Poset, f: Filter | Iterable) -> bool:
    """Maximal proper filter, decided by enumerating all filters of the poset.

    The improper filter (the whole poset) is a filter but never an
    ultrafilter.
    """
    members = f.members if isinstance(f, Filter) else frozenset(f)
    if not is_filter(p, members):
        raise NotAFilter(f"{set(members)!r} is not a filter")
    if members == p.element_set:
        return False
    for other in enumerate_filters(p):
        if members < other < p.element_set:
            return False
    return True


def frechet_contains(s: DefinableSubset) -> bool:
    """Membership in the cofinite filter: true exactly for cofinite subsets."""
    return s.is_cofinite


def definable_algebra(op: str, a: DefinableSubset, b: DefinableSubset | None = None) -> DefinableSubset:
    """Boolean-algebra operations on finite-or-cofinite subsets."""
    if op == "complement":
        return a.complement()
    if b is None:
        raise ValueError(f"operation {op!r} needs a second operand")
    if op == "union":
        return a.union(b)
    if op == "intersect":
        return a.intersect(b)
    raise ValueError(f"unknown operation {op!r}")
