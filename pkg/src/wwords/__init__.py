"""Exact engine for coloured-partition systems built from weighted words.

The package models systems of coloured integer partitions with gap
conditions, expands their generating functions by two independent methods
(direct enumeration and a smallest/largest-part recurrence), expands
infinite products exactly, and checks the resulting identities coefficient
by coefficient to a configurable truncation order.
"""

from .algebra import (
    AlgebraError,
    FactorizationError,
    Monomial,
    Polynomial,
    ProductFactor,
    ProductSpec,
    ProductSpecError,
    SubstitutionError,
    SubstitutionMap,
    TruncatedSeries,
    TruncationMismatch,
    euler_factorize,
    euler_reexpand,
    euler_table_to_spec,
    product_expand,
    series_combine,
    substitute,
)
from .enumeration import (
    EnumerationLimitError,
    count_partitions,
    enumerate_series,
    is_valid_partition,
    list_partitions,
    partition_weight,
)
from .recurrence import (
    EqTerm,
    EquationRangeError,
    EquationReport,
    EquationSpec,
    RecurrenceError,
    RecurrenceState,
    builtin_equation,
    builtin_equations,
    check_equation,
    dp_series,
)
from .systems import (
    AndrewsGap,
    ColourDef,
    ColouredPart,
    ColouredSystem,
    DilationSpec,
    FreeOverGap,
    MatrixGap,
    RankRule,
    SizeDomain,
    SystemSpecError,
    andrews_colour_data,
    andrews_colour_label,
    build_preset,
    dilate_system,
    min_gap,
    part_rank,
    preset_dilation,
    preset_names,
    relabel_colours,
    statistic_substitution,
)
from .discovery import (
    DiscoveryError,
    PeriodicPattern,
    RelationCandidate,
    recognize_periodic_product,
    search_relations,
)
from .verify import (
    ENGINES,
    IdentityCase,
    Report,
    VerificationError,
    check_statistics,
    coefficient_table,
    format_coefficient_table,
    identity_case,
    identity_cases,
    identity_names,
    verify_identity,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "FactorizationError",
    "Monomial",
    "Polynomial",
    "ProductFactor",
    "ProductSpec",
    "ProductSpecError",
    "SubstitutionError",
    "SubstitutionMap",
    "TruncatedSeries",
    "TruncationMismatch",
    "euler_factorize",
    "euler_reexpand",
    "euler_table_to_spec",
    "product_expand",
    "series_combine",
    "substitute",
    "EnumerationLimitError",
    "count_partitions",
    "enumerate_series",
    "is_valid_partition",
    "list_partitions",
    "partition_weight",
    "EqTerm",
    "EquationRangeError",
    "EquationReport",
    "EquationSpec",
    "RecurrenceError",
    "RecurrenceState",
    "builtin_equation",
    "builtin_equations",
    "check_equation",
    "dp_series",
    "AndrewsGap",
    "ColourDef",
    "ColouredPart",
    "ColouredSystem",
    "DilationSpec",
    "FreeOverGap",
    "MatrixGap",
    "RankRule",
    "SizeDomain",
    "SystemSpecError",
    "andrews_colour_data",
    "andrews_colour_label",
    "build_preset",
    "dilate_system",
    "min_gap",
    "part_rank",
    "preset_dilation",
    "preset_names",
    "relabel_colours",
    "statistic_substitution",
    "ENGINES",
    "IdentityCase",
    "Report",
    "VerificationError",
    "check_statistics",
    "coefficient_table",
    "format_coefficient_table",
    "identity_case",
    "identity_cases",
    "identity_names",
    "verify_identity",
    "DiscoveryError",
    "PeriodicPattern",
    "RelationCandidate",
    "recognize_periodic_product",
    "search_relations",
    "__version__",
]
