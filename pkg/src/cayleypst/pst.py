"""Exact decision procedures for perfect state transfer on translation graphs.

Three independent routes are provided: the structural conditions on the
connection set (the main characterization), a character-phase identity over
the integer spectrum, and the numeric row scan from the walk module.  They
must always agree on groups with a cyclic Sylow-2-subgroup; the enumeration
helper can enforce that agreement candidate by candidate.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

from .groups import (
    AbelianGroup,
    ConnectionSet,
    GroupElement,
    GroupMismatchError,
    is_power_closed,
    list_power_classes,
    order_four_pair,
    partition_by_two_part,
    power_class_key,
    scalar_multiple_set,
    subgroup_4m,
    sylow2_cyclic,
    unique_involution,
)
from .spectra import delta, integral_spectrum
from .walk import CapExceededError, detect_pst_numeric

TRANSFER_TIME = math.pi / 2
_TIME_LABEL = "pi/2"
DEFAULT_CLASS_CAP = 22
CROSS_VALIDATE_MAX_ORDER = 128


class Verdict(str, enum.Enum):
    PST = "PST"
    NO_PST = "NoPST"
    OUT_OF_SCOPE = "OutOfScope"


class CrossValidationError(Exception):
    """The structural verdict and the numeric row scan disagree.

    Carries the offending connection set; this should never fire and means a
    genuine bug (or a broken tolerance) somewhere.
    """

    def __init__(self, connection_set: ConnectionSet, report: "PstReport", detection):
        self.connection_set = connection_set
        self.report = report
        self.detection = detection
        numeric = "fired" if detection is not None else "found nothing"
        super().__init__(
            f"structural verdict {report.verdict.value} but the numeric scan {numeric} "
            f"for {connection_set!r}"
        )


@dataclass(frozen=True)
class PstReport:
    """Outcome of a transfer check: verdict, pair, time, and per-condition flags."""

    verdict: Verdict
    pair: tuple[GroupElement, GroupElement] | None
    time: str | None
    time_value: float | None
    conditions: dict[str, bool]
    diagnostics: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "pair": None if self.pair is None else [list(g.coords) for g in self.pair],
            "time": self.time,
            "time_value": self.time_value,
            "conditions": dict(self.conditions),
            "diagnostics": list(self.diagnostics),
        }


def _require_bound_set(group: AbelianGroup, connection_set: ConnectionSet) -> None:
    if connection_set.group != group:
        raise GroupMismatchError(
            f"connection set is bound to {connection_set.group}, not {group}"
        )


def _positive(group: AbelianGroup, conditions: dict[str, bool]) -> PstReport:
    return PstReport(
        Verdict.PST,
        (group.identity, unique_involution(group)),
        _TIME_LABEL,
        TRANSFER_TIME,
        conditions,
        (),
    )


def _negative(conditions: dict[str, bool], diagnostics: tuple[str, ...]) -> PstReport:
    return PstReport(Verdict.NO_PST, None, None, None, conditions, diagnostics)


def characterize_pst(group: AbelianGroup, connection_set: ConnectionSet) -> PstReport:
    """Decide perfect state transfer from the structure of the connection set.

    Groups whose Sylow-2-subgroup is not cyclic yield an OutOfScope verdict
    rather than an error.  Writing |G| = 2**d * m with m odd: d = 0 never has
    transfer; d = 1 has it exactly for the perfect matching C = {a}; for
    d >= 2 transfer holds iff C is power-closed, exactly one of a (the
    involution) and b (an order-four element) lies in C, and the valuation
    buckets satisfy C_0 = 4*(C_2 minus {b, -b}) and C_1 minus {a} = 2*(C_2
    minus {b, -b}).  Positive verdicts always name the pair (identity, a) and
    the time pi/2.
    """
    _require_bound_set(group, connection_set)
    if not sylow2_cyclic(group):
        return PstReport(
            Verdict.OUT_OF_SCOPE,
            None,
            None,
            None,
            {},
            (f"the Sylow-2-subgroup of {group} is not cyclic; the characterization does not apply",),
        )
    if group.d == 0:
        return _negative(
            {"odd_order_case": False},
            ("a Cayley graph of an odd-order group never admits perfect state transfer",),
        )
    if group.d == 1:
        involution = unique_involution(group)
        matches = connection_set.elements == frozenset({involution})
        if matches:
            return _positive(group, {"matching_case": True})
        return _negative(
            {"matching_case": False},
            (
                "for groups of order 2m with m odd, only the perfect matching "
                f"C = {{{involution}}} admits transfer",
            ),
        )

    involution = unique_involution(group)
    b, b_inv = order_four_pair(group)
    buckets = partition_by_two_part(connection_set)
    empty: frozenset[GroupElement] = frozenset()
    c0 = buckets.get(0, empty)
    c1 = buckets.get(1, empty)
    c2 = buckets.get(2, empty)
    core = c2 - {b, b_inv}
    conditions = {
        "power_closed": is_power_closed(connection_set),
        "exactly_one_of_a_b": (involution in connection_set) != (b in connection_set),
        "c0_equals_4c2": c0 == scalar_multiple_set(4, core),
        "c1_equals_2c2": c1 - {involution} == scalar_multiple_set(2, core),
    }
    if all(conditions.values()):
        return _positive(group, conditions)
    failed = tuple(f"condition {name} failed" for name, ok in conditions.items() if not ok)
    return _negative(conditions, failed)


def _odd_component_multiplier(group: AbelianGroup) -> int:
    """Integer k with k = 0 mod 2**d and k = 1 mod m; k*g is the odd-order part of g."""
    two_power = 1 << group.d
    return two_power * pow(two_power, -1, group.m)


def check_4m_conditions(group: AbelianGroup, connection_set: ConnectionSet) -> PstReport:
    """Transfer conditions specialized to groups of order exactly 4m, m odd.

    The valuation-1 and valuation-2 buckets factor through the odd-order part
    as C_1 = {a} + C_1* and C_2 = {b, -b} + C_2*; transfer holds iff C is
    power-closed, exactly one of a and b lies in C, and
    C_0 = C_1* minus {0} = C_2* minus {0}.
    """
    _require_bound_set(group, connection_set)
    if not sylow2_cyclic(group) or group.d != 2:
        raise ValueError(f"{group} must have order 4m with m odd (d = 2 exactly)")
    involution = unique_involution(group)
    b, _ = order_four_pair(group)
    buckets = partition_by_two_part(connection_set)
    empty: frozenset[GroupElement] = frozenset()
    c0 = buckets.get(0, empty)
    c1 = buckets.get(1, empty)
    c2 = buckets.get(2, empty)
    k = _odd_component_multiplier(group)
    identity = group.identity
    c1_star = frozenset(k * g for g in c1)
    c2_star = frozenset(k * g for g in c2)
    conditions = {
        "power_closed": is_power_closed(connection_set),
        "exactly_one_of_a_b": (involution in connection_set) != (b in connection_set),
        "c0_equals_c1_star": c0 == c1_star - {identity},
        "c0_equals_c2_star": c0 == c2_star - {identity},
    }
    if all(conditions.values()):
        return _positive(group, conditions)
    failed = tuple(f"condition {name} failed" for name, ok in conditions.items() if not ok)
    return _negative(conditions, failed)


def reduce_to_4m(
    group: AbelianGroup, connection_set: ConnectionSet
) -> tuple[AbelianGroup, ConnectionSet]:
    """Project onto the order-4m subgroup: transfer survives both directions.

    Returns the relabeled subgroup and the intersected connection set (the
    elements of valuation at most 2).
    """
    _require_bound_set(group, connection_set)
    embedding = subgroup_4m(group)
    kept = frozenset(
        embedding.to_subgroup(g) for g in connection_set.elements if g in embedding.elements
    )
    return embedding.group, ConnectionSet(embedding.group, kept)


def _character_sign_at_involution(index, involution: GroupElement) -> int:
    parity = 0
    for j, c, n in zip(index.indices, involution.coords, index.group.factors):
        # involution coordinates are 0 or n/2, so 2*j*c is a multiple of n
        parity += (2 * j * c) // n
    return -1 if parity % 2 else 1


def character_criterion(group: AbelianGroup, connection_set: ConnectionSet) -> bool:
    """Third decision route: the transfer-phase identity over all characters.

    True iff chi(a) = (-1)**((|C| - chi(C)) / delta) for every character chi,
    where a is the unique involution and delta the gcd of eigenvalue gaps;
    this holds exactly when transfer from the identity to a occurs at time
    pi/delta.  Returns False when no involution exists (odd order) or when
    delta is undefined (a single eigenvalue); propagates
    NonIntegralSpectrumError for non-power-closed sets.
    """
    _require_bound_set(group, connection_set)
    spectrum = integral_spectrum(group, connection_set)
    if group.d == 0:
        return False
    involution = unique_involution(group)
    gap = delta(spectrum)
    if gap is None:
        return False
    size = len(connection_set)
    for index, eigenvalue in spectrum.by_character.items():
        difference = size - eigenvalue
        if difference % gap:
            return False
        wanted = -1 if (difference // gap) % 2 else 1
        if _character_sign_at_involution(index, involution) != wanted:
            return False
    return True


@dataclass(frozen=True)
class ParityReport:
    """Size parities of the valuation buckets against membership of a and b."""

    c0_even: bool
    c2_even: bool
    c1_odd_iff_a: bool
    c2_div4_iff_no_b: bool

    @property
    def all_hold(self) -> bool:
        return self.c0_even and self.c2_even and self.c1_odd_iff_a and self.c2_div4_iff_no_b

    def to_json_dict(self) -> dict:
        return {
            "c0_even": self.c0_even,
            "c2_even": self.c2_even,
            "c1_odd_iff_a": self.c1_odd_iff_a,
            "c2_div4_iff_no_b": self.c2_div4_iff_no_b,
        }


def parity_report(group: AbelianGroup, connection_set: ConnectionSet) -> ParityReport:
    """Evaluate the four parity facts that every power-closed set must satisfy.

    Requires a cyclic Sylow-2-subgroup of order at least four and a
    power-closed set.
    """
    _require_bound_set(group, connection_set)
    if not sylow2_cyclic(group) or group.d < 2:
        raise ValueError(f"{group} needs a cyclic Sylow-2-subgroup of order >= 4")
    if not is_power_closed(connection_set):
        raise ValueError("parity facts require a power-closed connection set")
    involution = unique_involution(group)
    b, _ = order_four_pair(group)
    buckets = partition_by_two_part(connection_set)
    empty: frozenset[GroupElement] = frozenset()
    c0 = buckets.get(0, empty)
    c1 = buckets.get(1, empty)
    c2 = buckets.get(2, empty)
    return ParityReport(
        c0_even=len(c0) % 2 == 0,
        c2_even=len(c2) % 2 == 0,
        c1_odd_iff_a=(len(c1) % 2 == 1) == (involution in connection_set),
        c2_div4_iff_no_b=(len(c2) % 4 == 0) == (b not in connection_set),
    )


def enumerate_pst_sets(
    group: AbelianGroup,
    cross_validate: bool | None = None,
    *,
    class_cap: int = DEFAULT_CLASS_CAP,
    detect_tol: float = 1e-9,
) -> list[ConnectionSet]:
    """Census of every power-closed connection set that admits transfer.

    Iterates all unions of non-identity power classes.  With cross-validation
    on, every candidate (positive and negative) is compared against the
    numeric row scan at time pi/2; any disagreement raises
    CrossValidationError carrying the counterexample.  When cross_validate is
    None it defaults to on for orders up to 128 and off (with a warning)
    above.  Results are ordered by (size, lexicographic class keys).
    """
    if not sylow2_cyclic(group):
        raise ValueError(f"{group} is out of scope: its Sylow-2-subgroup is not cyclic")
    all_classes = list_power_classes(group)
    if len(all_classes) > class_cap:
        raise CapExceededError(
            f"{group} has {len(all_classes)} power classes, above the cap {class_cap}"
        )
    identity = group.identity
    classes = [cls for cls in all_classes if identity not in cls]
    if cross_validate is None:
        cross_validate = group.order <= CROSS_VALIDATE_MAX_ORDER
        if not cross_validate:
            warnings.warn(
                f"cross-validation disabled for |{group}| = {group.order} > "
                f"{CROSS_VALIDATE_MAX_ORDER}; pass cross_validate=True to force it",
                RuntimeWarning,
                stacklevel=2,
            )
    found: list[tuple[int, tuple, ConnectionSet]] = []
    for mask in range(1 << len(classes)):
        members: set[GroupElement] = set()
        keys = []
        for i, cls in enumerate(classes):
            if (mask >> i) & 1:
                members.update(cls)
                keys.append(power_class_key(cls))
        candidate = ConnectionSet(group, frozenset(members))
        report = characterize_pst(group, candidate)
        claimed = report.verdict is Verdict.PST
        if cross_validate:
            detection = detect_pst_numeric(group, candidate, TRANSFER_TIME, detect_tol)
            observed = detection is not None
            mismatch = claimed != observed or (
                claimed and observed and detection.target != report.pair[1]
            )
            if mismatch:
                raise CrossValidationError(candidate, report, detection)
        if claimed:
            found.append((len(candidate), tuple(sorted(keys)), candidate))
    found.sort(key=lambda item: item[:2])
    return [candidate for _, _, candidate in found]
