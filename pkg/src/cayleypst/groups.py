"""Finite abelian group arithmetic for translation-graph analysis.

A group is an ordered product of cyclic factors; elements are coordinate
tuples bound to their group.  Connection sets (inverse-closed, identity-free
subsets) defined here determine every graph the rest of the package studies.
All values are immutable and safe to share.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator


class GroupMismatchError(ValueError):
    """Arithmetic or comparison attempted across two different groups."""


def two_part(n: int) -> tuple[int, int]:
    """Split a positive integer as 2**k * m with m odd, returning (k, m)."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    k = (n & -n).bit_length() - 1
    return k, n >> k


@dataclass(frozen=True)
class AbelianGroup:
    """Product of cyclic groups Z_n1 x ... x Z_nr, in the order written.

    Two groups are equal only if their factor lists match; no invariant-factor
    normalization is performed.  `order` is the product of the factors,
    `d` its 2-adic valuation and `m` its odd part, so order == 2**d * m.
    """

    factors: tuple[int, ...]
    order: int = field(init=False, compare=False, repr=False)
    d: int = field(init=False, compare=False, repr=False)
    m: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        factors = tuple(int(n) for n in self.factors)
        if not factors:
            raise ValueError("a group needs at least one cyclic factor")
        bad = [n for n in factors if n < 2]
        if bad:
            raise ValueError(f"cyclic factor orders must be >= 2, got {bad}")
        object.__setattr__(self, "factors", factors)
        order = math.prod(factors)
        d, m = two_part(order)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "m", m)

    def __str__(self) -> str:
        return "x".join(f"Z{n}" for n in self.factors)

    def __repr__(self) -> str:
        return f"AbelianGroup({self})"

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, (0,) * len(self.factors))

    def element(self, coords: Iterable[int]) -> GroupElement:
        """Build an element, reducing each coordinate modulo its factor."""
        raw = tuple(int(c) for c in coords)
        if len(raw) != len(self.factors):
            raise ValueError(
                f"expected {len(self.factors)} coordinates for {self}, got {len(raw)}"
            )
        return GroupElement(self, tuple(c % n for c, n in zip(raw, self.factors)))

    def elements(self) -> Iterator[GroupElement]:
        """All elements in canonical (lexicographic coordinate) order."""
        return iter(_canonical_elements(self))

    def index_of(self, g: GroupElement) -> int:
        """Position of g in the canonical element order."""
        _require_bound(self, g)
        return _element_index(self)[g]

    def element_at(self, index: int) -> GroupElement:
        return _canonical_elements(self)[index]


@dataclass(frozen=True)
class GroupElement:
    """A coordinate tuple of residues, bound to its group."""

    group: AbelianGroup
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != len(self.group.factors):
            raise ValueError(
                f"element has {len(self.coords)} coordinates but {self.group} "
                f"has {len(self.group.factors)} factors"
            )
        for c, n in zip(self.coords, self.group.factors):
            if not 0 <= c < n:
                raise ValueError(
                    f"coordinate {c} out of range for Z{n}; "
                    "use AbelianGroup.element to reduce"
                )

    def __repr__(self) -> str:
        return f"({','.join(str(c) for c in self.coords)})@{self.group}"

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def __add__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        _require_bound(self.group, other)
        return GroupElement(
            self.group,
            tuple((a + b) % n for a, b, n in zip(self.coords, other.coords, self.group.factors)),
        )

    def __sub__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        _require_bound(self.group, other)
        return GroupElement(
            self.group,
            tuple((a - b) % n for a, b, n in zip(self.coords, other.coords, self.group.factors)),
        )

    def __neg__(self) -> GroupElement:
        return GroupElement(
            self.group, tuple((-c) % n for c, n in zip(self.coords, self.group.factors))
        )

    def __mul__(self, k: int) -> GroupElement:
        if not isinstance(k, int):
            return NotImplemented
        return GroupElement(
            self.group, tuple((k * c) % n for c, n in zip(self.coords, self.group.factors))
        )

    __rmul__ = __mul__

    @property
    def order(self) -> int:
        return _element_order(self)


def _require_bound(group: AbelianGroup, g: GroupElement) -> None:
    if g.group != group:
        raise GroupMismatchError(f"element {g!r} is not bound to {group}")


@lru_cache(maxsize=None)
def _canonical_elements(group: AbelianGroup) -> tuple[GroupElement, ...]:
    return tuple(
        GroupElement(group, coords)
        for coords in itertools.product(*(range(n) for n in group.factors))
    )


@lru_cache(maxsize=None)
def _element_index(group: AbelianGroup) -> dict[GroupElement, int]:
    return {g: i for i, g in enumerate(_canonical_elements(group))}


@lru_cache(maxsize=None)
def _element_order(g: GroupElement) -> int:
    result = 1
    for c, n in zip(g.coords, g.group.factors):
        result = math.lcm(result, n // math.gcd(n, c))
    return result


def element_order(group: AbelianGroup, g: GroupElement) -> int:
    """Least positive k with k*g = identity (lcm of coordinate orders)."""
    _require_bound(group, g)
    return _element_order(g)


def sylow2_cyclic(group: AbelianGroup) -> bool:
    """True iff at most one factor is even, i.e. the Sylow-2-subgroup is cyclic."""
    return sum(1 for n in group.factors if n % 2 == 0) <= 1


def _even_factor_index(group: AbelianGroup) -> int:
    evens = [i for i, n in enumerate(group.factors) if n % 2 == 0]
    if len(evens) != 1:
        raise ValueError(f"{group} does not have exactly one even factor")
    return evens[0]


def unique_involution(group: AbelianGroup) -> GroupElement:
    """The single element of order two (needs cyclic Sylow-2 and even order)."""
    if not sylow2_cyclic(group) or group.d < 1:
        raise ValueError(f"{group} has no unique element of order two")
    j = _even_factor_index(group)
    coords = [0] * group.rank
    coords[j] = group.factors[j] // 2
    return GroupElement(group, tuple(coords))


def order_four_pair(group: AbelianGroup) -> tuple[GroupElement, GroupElement]:
    """The inverse pair of order-four elements, smaller coordinate first.

    Exists exactly when the Sylow-2-subgroup is cyclic of order >= 4.
    """
    if not sylow2_cyclic(group) or group.d < 2:
        raise ValueError(f"{group} has no unique pair of elements of order four")
    j = _even_factor_index(group)
    quarter = group.factors[j] // 4
    coords = [0] * group.rank
    coords[j] = quarter
    first = GroupElement(group, tuple(coords))
    coords[j] = 3 * quarter
    second = GroupElement(group, tuple(coords))
    return first, second


@lru_cache(maxsize=None)
def _power_class(g: GroupElement) -> frozenset[GroupElement]:
    ord_g = _element_order(g)
    return frozenset(t * g for t in range(1, ord_g + 1) if math.gcd(t, ord_g) == 1)


def power_class(group: AbelianGroup, g: GroupElement) -> frozenset[GroupElement]:
    """All generators of the cyclic subgroup generated by g."""
    _require_bound(group, g)
    return _power_class(g)


def power_class_key(cls: Iterable[GroupElement]) -> tuple[int, ...]:
    """Canonical key of a power class: its lexicographically smallest member."""
    return min(g.coords for g in cls)


@lru_cache(maxsize=None)
def _power_classes(group: AbelianGroup) -> tuple[frozenset[GroupElement], ...]:
    seen: set[GroupElement] = set()
    classes: list[frozenset[GroupElement]] = []
    for g in _canonical_elements(group):
        if g in seen:
            continue
        cls = _power_class(g)
        classes.append(cls)
        seen.update(cls)
    classes.sort(key=lambda cls: (_element_order(next(iter(cls))), power_class_key(cls)))
    return tuple(classes)


def list_power_classes(group: AbelianGroup) -> list[frozenset[GroupElement]]:
    """Partition of the group into power classes, sorted by (element order, key)."""
    return list(_power_classes(group))


def _element_set(connection_set) -> frozenset[GroupElement]:
    if isinstance(connection_set, ConnectionSet):
        return connection_set.elements
    return frozenset(connection_set)


def is_power_closed(connection_set) -> bool:
    """True iff the set is a union of power classes.

    Accepts a ConnectionSet or any iterable of elements, so sets that are not
    inverse-closed can still be classified.
    """
    elems = _element_set(connection_set)
    return all(_power_class(g) <= elems for g in elems)


def partition_by_two_part(connection_set) -> dict[int, frozenset[GroupElement]]:
    """Split a set by the 2-adic valuation of element order.

    Bucket k holds the elements of order 2**k * odd.  Only nonempty buckets
    appear, with keys in increasing order.
    """
    buckets: dict[int, set[GroupElement]] = {}
    for g in _element_set(connection_set):
        k, _ = two_part(_element_order(g))
        buckets.setdefault(k, set()).add(g)
    return {k: frozenset(v) for k, v in sorted(buckets.items())}


def scalar_multiple_set(k: int, elements) -> frozenset[GroupElement]:
    """Elementwise scalar multiple {k*g}; collisions merge."""
    if k < 1:
        raise ValueError(f"scalar must be a positive integer, got {k}")
    return frozenset(k * g for g in _element_set(elements))


@dataclass(frozen=True)
class ConnectionSet:
    """Validated inverse-closed, identity-free subset of one group.

    `loops_allowed` records that the identity was present in the raw input
    and stripped (a loop at every vertex, which never affects transfer).
    """

    group: AbelianGroup
    elements: frozenset[GroupElement]
    loops_allowed: bool = False

    def __post_init__(self) -> None:
        elems = frozenset(self.elements)
        object.__setattr__(self, "elements", elems)
        identity = self.group.identity
        for g in elems:
            _require_bound(self.group, g)
            if g == identity:
                raise ValueError(
                    "identity may not appear in a connection set; "
                    "use ConnectionSet.from_elements to strip loops"
                )
            if -g not in elems:
                raise ValueError(f"set is not inverse-closed: missing inverse of {g!r}")

    @classmethod
    def from_elements(cls, group: AbelianGroup, elements: Iterable[GroupElement]) -> ConnectionSet:
        """Build a connection set, silently stripping the identity if present."""
        elems = set(elements)
        identity = group.identity
        had_identity = identity in elems
        elems.discard(identity)
        return cls(group, frozenset(elems), loops_allowed=had_identity)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.sorted_elements())

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.elements

    def sorted_elements(self) -> list[GroupElement]:
        return sorted(self.elements, key=lambda g: g.coords)

    def __repr__(self) -> str:
        coords = [g.coords for g in self.sorted_elements()]
        return f"ConnectionSet({coords}@{self.group})"


@dataclass(frozen=True)
class Subgroup4m:
    """The subgroup of elements whose order divides 4m, with its relabeling.

    The surviving coordinates of the even factor are divided by 2**(d-2), so
    the induced group replaces that factor 2**d * u by 4u; the other factors
    are untouched.  `to_subgroup` and `from_subgroup` are mutually inverse.
    """

    parent: AbelianGroup
    group: AbelianGroup
    elements: frozenset[GroupElement]
    even_index: int
    scale: int

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.elements

    def to_subgroup(self, g: GroupElement) -> GroupElement:
        _require_bound(self.parent, g)
        if g.coords[self.even_index] % self.scale:
            raise ValueError(f"{g!r} is not in the order-4m subgroup")
        coords = list(g.coords)
        coords[self.even_index] //= self.scale
        return GroupElement(self.group, tuple(coords))

    def from_subgroup(self, g: GroupElement) -> GroupElement:
        _require_bound(self.group, g)
        coords = list(g.coords)
        coords[self.even_index] *= self.scale
        return GroupElement(self.parent, tuple(coords))


def subgroup_4m(group: AbelianGroup) -> Subgroup4m:
    """Embedding of the unique subgroup of order 4m (requires d >= 2)."""
    if not sylow2_cyclic(group) or group.d < 2:
        raise ValueError(f"{group} has no subgroup of order 4m with m odd and d >= 2")
    j = _even_factor_index(group)
    scale = 1 << (group.d - 2)
    sub_factors = list(group.factors)
    sub_factors[j] //= scale
    induced = AbelianGroup(tuple(sub_factors))
    members = frozenset(g for g in _canonical_elements(group) if g.coords[j] % scale == 0)
    return Subgroup4m(group, induced, members, j, scale)


_FACTOR_RE = re.compile(r"[Zz](\d+)")


def parse_group(text: str) -> AbelianGroup:
    """Parse a group written as Z<n> factors joined by 'x', e.g. 'Z4xZ3xZ3'.

    Case-insensitive and whitespace-tolerant; every factor must be >= 2.
    """
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ValueError("empty group specification")
    factors = []
    for part in re.split(r"[xX]", compact):
        match = _FACTOR_RE.fullmatch(part)
        if not match:
            raise ValueError(f"malformed group specification {text!r}: bad factor {part!r}")
        n = int(match.group(1))
        if n < 2:
            raise ValueError(f"cyclic factor orders must be >= 2, got Z{n}")
        factors.append(n)
    return AbelianGroup(tuple(factors))


def parse_element(group: AbelianGroup, text: str) -> GroupElement:
    """Parse '(2,0,0)' (or a bare integer for single-factor groups)."""
    compact = re.sub(r"\s+", "", text)
    try:
        if compact.startswith("(") and compact.endswith(")"):
            inner = compact[1:-1]
            if not inner:
                raise ValueError("empty tuple")
            return group.element(int(p) for p in inner.split(","))
        if group.rank == 1:
            return group.element([int(compact)])
    except ValueError as exc:
        raise ValueError(f"bad element literal {text!r} for {group}: {exc}") from None
    raise ValueError(
        f"bad element literal {text!r}: {group} needs a coordinate tuple like "
        f"({','.join('0' * group.rank)})"
    )


def _split_top_level(text: str) -> list[str]:
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError("unbalanced parentheses in set literal")
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth:
        raise ValueError("unbalanced parentheses in set literal")
    parts.append("".join(current))
    cleaned = [p.strip() for p in parts]
    if any(not p for p in cleaned):
        raise ValueError("empty entry in set literal")
    return cleaned


def parse_connection_set(group: AbelianGroup, text: str) -> ConnectionSet:
    """Parse a set literal like '{(1,0),(3,0)}' or '{1,3}'; '{}' is the empty set."""
    stripped = text.strip()
    if not (stripped.startswith("{") and stripped.endswith("}")):
        raise ValueError(f"set literal must be brace-wrapped, got {text!r}")
    inner = stripped[1:-1].strip()
    if not inner:
        return ConnectionSet.from_elements(group, [])
    items = _split_top_level(inner)
    return ConnectionSet.from_elements(group, (parse_element(group, item) for item in items))
