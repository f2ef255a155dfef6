"""Continuous-time quantum walk numerics for translation graphs.

Two independent routes to the transition matrix exp(i*t*A): a closed form
through the character decomposition, and a dense scaling-and-squaring series
on the adjacency matrix.  The dense route shares no character machinery and
serves as the low-tech cross-check for everything else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .groups import (
    AbelianGroup,
    ConnectionSet,
    GroupElement,
    _canonical_elements,
    _require_bound,
)
from .spectra import _indicator, character_table

DENSE_ORDER_CAP = 512
_SERIES_TERMS = 20


class CapExceededError(ValueError):
    """A configured size cap was exceeded."""


class AmbiguousTransferError(Exception):
    """Several off-diagonal amplitudes are near modulus one: tolerance too loose."""

    def __init__(self, group: AbelianGroup, targets: list[GroupElement], tol: float):
        self.group = group
        self.targets = targets
        self.tol = tol
        listing = ", ".join(str(t) for t in targets)
        super().__init__(
            f"{len(targets)} near-unit off-diagonal amplitudes in {group} at tol={tol}: {listing}"
        )


@lru_cache(maxsize=None)
def _difference_index(group: AbelianGroup) -> np.ndarray:
    """Index table D[g, h] = canonical index of h - g."""
    coords = np.array([g.coords for g in _canonical_elements(group)], dtype=np.int64)
    mods = np.array(group.factors, dtype=np.int64)
    diff = (coords[None, :, :] - coords[:, None, :]) % mods
    weights = np.ones(len(group.factors), dtype=np.int64)
    for i in range(len(group.factors) - 2, -1, -1):
        weights[i] = weights[i + 1] * group.factors[i + 1]
    table = diff @ weights
    table.setflags(write=False)
    return table


def adjacency_matrix(group: AbelianGroup, connection_set: ConnectionSet) -> np.ndarray:
    """0/1 adjacency matrix in canonical vertex order: A[g, h] = 1 iff h - g in C."""
    indicator = _indicator(group, connection_set)
    return indicator[_difference_index(group)]


def _identity_row(group: AbelianGroup, connection_set: ConnectionSet, t: float) -> np.ndarray:
    """Row of the transition matrix at the identity vertex, via characters."""
    table = character_table(group)
    eigenvalues = table @ _indicator(group, connection_set)
    phases = np.exp(1j * t * eigenvalues)
    return (phases @ table) / group.order


@dataclass(frozen=True)
class TransitionMatrix:
    """exp(i*t*A) for a translation graph, indexed in canonical vertex order."""

    group: AbelianGroup
    time: float
    entries: np.ndarray

    def __post_init__(self) -> None:
        self.entries.setflags(write=False)

    def amplitude(self, source: GroupElement, target: GroupElement) -> complex:
        gi = self.group.index_of(source)
        hi = self.group.index_of(target)
        return complex(self.entries[gi, hi])

    def to_json_dict(self) -> dict:
        return {
            "time": self.time,
            "vertices": [list(g.coords) for g in _canonical_elements(self.group)],
            "entries": [[[z.real, z.imag] for z in row] for row in self.entries],
        }


def transition_amplitude(
    group: AbelianGroup,
    connection_set: ConnectionSet,
    source: GroupElement,
    target: GroupElement,
    t: float,
) -> complex:
    """Single amplitude U(t)[source, target] through the character decomposition.

    Equals (1/|G|) * sum over characters of exp(i*t*chi(C)) * chi(target - source).
    """
    _require_bound(group, source)
    _require_bound(group, target)
    row = _identity_row(group, connection_set, t)
    return complex(row[group.index_of(target - source)])


def transition_matrix(group: AbelianGroup, connection_set: ConnectionSet, t: float) -> TransitionMatrix:
    """Full transition matrix via characters; entry (g, h) depends only on h - g."""
    row = _identity_row(group, connection_set, t)
    return TransitionMatrix(group, float(t), row[_difference_index(group)])


def dense_expm(
    group: AbelianGroup,
    connection_set: ConnectionSet,
    t: float,
    cap: int = DENSE_ORDER_CAP,
) -> TransitionMatrix:
    """Independent dense route: scaling and squaring of a truncated series.

    The adjacency matrix is scaled so that degree*|t|/2**s <= 1/2, run through
    a series truncated at order 20, and squared back s times.  No character
    code is involved; this is the cross-validation oracle.
    """
    if group.order > cap:
        raise CapExceededError(f"|{group}| = {group.order} exceeds the dense cap {cap}")
    adjacency = adjacency_matrix(group, connection_set).astype(np.complex128)
    bound = len(connection_set) * abs(t)
    squarings = 0 if bound <= 0.5 else math.ceil(math.log2(bound / 0.5))
    scaled = (1j * t / (1 << squarings)) * adjacency
    eye = np.eye(group.order, dtype=np.complex128)
    result = eye.copy()
    for k in range(_SERIES_TERMS, 0, -1):
        result = eye + (scaled @ result) / k
    for _ in range(squarings):
        result = result @ result
    return TransitionMatrix(group, float(t), result)


@dataclass(frozen=True)
class PstDetection:
    """A near-unit off-diagonal amplitude found on the identity row."""

    source: GroupElement
    target: GroupElement
    phase: complex


def detect_pst_numeric(
    group: AbelianGroup,
    connection_set: ConnectionSet,
    t: float,
    tol: float = 1e-9,
) -> PstDetection | None:
    """Scan the identity row of U(t) for an off-diagonal amplitude of modulus ~1.

    Translation invariance makes the identity row representative of every
    vertex.  Returns None when nothing reaches 1 - tol; raises
    AmbiguousTransferError when more than one entry does (tolerance too loose).
    """
    if not 0.0 < tol < 0.5:
        raise ValueError(f"tolerance must lie in (0, 0.5), got {tol}")
    row = _identity_row(group, connection_set, t)
    magnitudes = np.abs(row)
    hits = [i for i in range(1, group.order) if magnitudes[i] >= 1.0 - tol]
    if not hits:
        return None
    if len(hits) > 1:
        raise AmbiguousTransferError(group, [group.element_at(i) for i in hits], tol)
    target = group.element_at(hits[0])
    return PstDetection(group.identity, target, complex(row[hits[0]]))


def is_periodic_numeric(
    group: AbelianGroup,
    connection_set: ConnectionSet,
    t: float,
    tol: float = 1e-9,
) -> bool:
    """True iff |U(t)| at the identity diagonal entry is within tol of 1.

    By translation invariance this settles periodicity of every vertex.
    """
    if not 0.0 < tol < 0.5:
        raise ValueError(f"tolerance must lie in (0, 0.5), got {tol}")
    row = _identity_row(group, connection_set, t)
    return bool(abs(row[0]) >= 1.0 - tol)
