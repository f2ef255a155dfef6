"""Characters of abelian groups and exact integer spectra of translation graphs.

Every character is simultaneously an eigenvector of every Cayley graph of its
group; the eigenvalue attached to a connection set is the character sum over
that set.  The sums are evaluated in double precision and snapped to integers
within a tolerance, which succeeds exactly when the set is power-closed.
"""

from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .groups import (
    AbelianGroup,
    ConnectionSet,
    GroupElement,
    GroupMismatchError,
    _canonical_elements,
    _element_index,
)

INTEGRALITY_TOL = 1e-7


class NonIntegralSpectrumError(Exception):
    """An eigenvalue is not close to an integer: the set is not power-closed."""

    def __init__(self, index: "CharacterIndex", value: complex):
        self.index = index
        self.value = value
        super().__init__(
            f"character {index.indices} gives non-integral eigenvalue "
            f"{value.real:.9g}{value.imag:+.3g}i"
        )


@dataclass(frozen=True)
class CharacterIndex:
    """Index tuple (j_1, ..., j_r) selecting one character of the group."""

    group: AbelianGroup
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.indices) != len(self.group.factors):
            raise ValueError(
                f"character index has {len(self.indices)} entries but {self.group} "
                f"has {len(self.group.factors)} factors"
            )
        for j, n in zip(self.indices, self.group.factors):
            if not 0 <= j < n:
                raise ValueError(f"character index entry {j} out of range for Z{n}")

    def __repr__(self) -> str:
        return f"chi{self.indices}@{self.group}"

    @property
    def is_trivial(self) -> bool:
        return not any(self.indices)


def character_index(group: AbelianGroup, indices) -> CharacterIndex:
    """Build a character index, reducing entries modulo the factor orders."""
    raw = tuple(int(j) for j in indices)
    if len(raw) != len(group.factors):
        raise ValueError(f"expected {len(group.factors)} index entries for {group}")
    return CharacterIndex(group, tuple(j % n for j, n in zip(raw, group.factors)))


@lru_cache(maxsize=None)
def _character_indices(group: AbelianGroup) -> tuple[CharacterIndex, ...]:
    return tuple(CharacterIndex(group, g.coords) for g in _canonical_elements(group))


def all_character_indices(group: AbelianGroup) -> list[CharacterIndex]:
    """All |G| character indices in canonical order; the first is trivial."""
    return list(_character_indices(group))


def character_value(index: CharacterIndex, g: GroupElement) -> complex:
    """Value of the character at one element: a product of roots of unity."""
    if index.group != g.group:
        raise GroupMismatchError(f"{index!r} and {g!r} belong to different groups")
    value = 1.0 + 0.0j
    for j, c, n in zip(index.indices, g.coords, index.group.factors):
        value *= cmath.exp(2j * cmath.pi * ((j * c) % n) / n)
    return value


def character_sum(index: CharacterIndex, connection_set: ConnectionSet) -> complex:
    """Eigenvalue of the Cayley graph for this character's eigenvector.

    Elements are summed in canonical order so results are reproducible.
    """
    if index.group != connection_set.group:
        raise GroupMismatchError(f"{index!r} is not a character of {connection_set.group}")
    return sum((character_value(index, g) for g in connection_set), 0.0 + 0.0j)


@lru_cache(maxsize=None)
def character_table(group: AbelianGroup) -> np.ndarray:
    """Full |G| x |G| character table; rows are characters, columns elements.

    Both axes follow the canonical element order, so table[j] @ indicator(C)
    is the eigenvalue vector of X(G, C).  The table is symmetric.
    """
    table = np.ones((1, 1), dtype=np.complex128)
    for n in group.factors:
        grid = np.outer(np.arange(n), np.arange(n)) % n
        table = np.kron(table, np.exp(2j * np.pi * grid / n))
    table.setflags(write=False)
    return table


def _indicator(group: AbelianGroup, connection_set: ConnectionSet) -> np.ndarray:
    if connection_set.group != group:
        raise GroupMismatchError(f"connection set is bound to {connection_set.group}, not {group}")
    vec = np.zeros(group.order)
    index = _element_index(group)
    for g in connection_set.elements:
        vec[index[g]] = 1.0
    return vec


@dataclass(frozen=True)
class Spectrum:
    """Exact integer eigenvalues of an integral translation graph.

    `by_character` maps every character index to its eigenvalue;
    `eigenvalues` is the derived multiset, keyed by value in descending order.
    """

    by_character: dict[CharacterIndex, int]
    eigenvalues: dict[int, int] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        counts = Counter(self.by_character.values())
        ordered = {value: counts[value] for value in sorted(counts, reverse=True)}
        object.__setattr__(self, "eigenvalues", ordered)

    @property
    def distinct(self) -> tuple[int, ...]:
        return tuple(self.eigenvalues)

    @property
    def max_eigenvalue(self) -> int:
        return next(iter(self.eigenvalues))

    @property
    def total_multiplicity(self) -> int:
        return sum(self.eigenvalues.values())

    def multiplicity(self, value: int) -> int:
        return self.eigenvalues.get(value, 0)

    def to_json_dict(self) -> dict:
        return {"eigenvalues": [[value, mult] for value, mult in self.eigenvalues.items()]}


def integral_spectrum(
    group: AbelianGroup, connection_set: ConnectionSet, tol: float = INTEGRALITY_TOL
) -> Spectrum:
    """Evaluate every character sum and snap it to an integer.

    Raises NonIntegralSpectrumError, naming the first offending character in
    canonical order, when some sum is farther than `tol` from an integer
    (equivalently, when the set is not power-closed).
    """
    values = character_table(group) @ _indicator(group, connection_set)
    by_character: dict[CharacterIndex, int] = {}
    for index, value in zip(_character_indices(group), values):
        nearest = round(value.real)
        if abs(value.imag) > tol or abs(value.real - nearest) > tol:
            raise NonIntegralSpectrumError(index, complex(value))
        by_character[index] = int(nearest)
    return Spectrum(by_character)


def delta(spectrum: Spectrum) -> int | None:
    """Gcd of the gaps from the top eigenvalue down to each other one.

    Returns None when there is a single distinct eigenvalue (a graph with no
    transfer time; never 0, so pi/delta is always well defined when not None).
    """
    distinct = spectrum.distinct
    if len(distinct) < 2:
        return None
    top = distinct[0]
    return math.gcd(*(top - value for value in distinct[1:]))


def odd_eigenvalue_exists(group: AbelianGroup, connection_set: ConnectionSet) -> bool:
    """True iff the integral spectrum contains an odd eigenvalue."""
    spectrum = integral_spectrum(group, connection_set)
    return any(value % 2 for value in spectrum.eigenvalues)
