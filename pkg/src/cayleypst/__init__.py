"""Perfect state transfer on Cayley graphs of finite abelian groups.

Decides transfer exactly from the structure of the connection set (for groups
with a cyclic Sylow-2-subgroup), computes exact integer spectra through group
characters, and cross-checks everything against dense matrix-exponential
numerics.
"""

from .groups import (
    AbelianGroup,
    ConnectionSet,
    GroupElement,
    GroupMismatchError,
    Subgroup4m,
    element_order,
    is_power_closed,
    list_power_classes,
    order_four_pair,
    parse_connection_set,
    parse_element,
    parse_group,
    partition_by_two_part,
    power_class,
    power_class_key,
    scalar_multiple_set,
    subgroup_4m,
    sylow2_cyclic,
    two_part,
    unique_involution,
)
from .pst import (
    CrossValidationError,
    ParityReport,
    PstReport,
    TRANSFER_TIME,
    Verdict,
    character_criterion,
    characterize_pst,
    check_4m_conditions,
    enumerate_pst_sets,
    parity_report,
    reduce_to_4m,
)
from .spectra import (
    CharacterIndex,
    NonIntegralSpectrumError,
    Spectrum,
    all_character_indices,
    character_index,
    character_sum,
    character_table,
    character_value,
    delta,
    integral_spectrum,
    odd_eigenvalue_exists,
)
from .walk import (
    AmbiguousTransferError,
    CapExceededError,
    PstDetection,
    TransitionMatrix,
    adjacency_matrix,
    dense_expm,
    detect_pst_numeric,
    is_periodic_numeric,
    transition_amplitude,
    transition_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "AmbiguousTransferError",
    "CapExceededError",
    "CharacterIndex",
    "ConnectionSet",
    "CrossValidationError",
    "GroupElement",
    "GroupMismatchError",
    "NonIntegralSpectrumError",
    "ParityReport",
    "PstDetection",
    "PstReport",
    "Spectrum",
    "Subgroup4m",
    "TRANSFER_TIME",
    "TransitionMatrix",
    "Verdict",
    "adjacency_matrix",
    "all_character_indices",
    "character_criterion",
    "character_index",
    "character_sum",
    "character_table",
    "character_value",
    "characterize_pst",
    "check_4m_conditions",
    "delta",
    "dense_expm",
    "detect_pst_numeric",
    "element_order",
    "enumerate_pst_sets",
    "integral_spectrum",
    "is_periodic_numeric",
    "is_power_closed",
    "list_power_classes",
    "odd_eigenvalue_exists",
    "order_four_pair",
    "parity_report",
    "parse_connection_set",
    "parse_element",
    "parse_group",
    "partition_by_two_part",
    "power_class",
    "power_class_key",
    "reduce_to_4m",
    "scalar_multiple_set",
    "subgroup_4m",
    "sylow2_cyclic",
    "transition_amplitude",
    "transition_matrix",
    "two_part",
    "unique_involution",
]
