"""Exact arithmetic for dimension/measure value pairs, h-measure
spaces, the generalized integral of pair-valued functions, and the
deficiency functionals built on it."""

from .errors import (
    EmptyListError,
    HIntegralError,
    NonDisjointError,
    ParseError,
    UndefinedSumError,
    UnknownSetError,
    UnsupportedExpressionError,
    UnsupportedScenarioError,
)
from .hvalue import (
    INF,
    NEG_INF,
    ZERO,
    ExtRat,
    HValue,
    SeqDescriptor,
    add,
    compare,
    mul,
    scalar_mul,
    sum_described,
    sum_finite,
    sup_finite,
)
from .space import (
    AtomSet,
    AtomSpace,
    CatalogSet,
    CatalogSpace,
    CatalogUnion,
    IntervalSet,
    IntervalSpace,
    measure,
    mu_H,
    scaled_embedding,
    validate_h_measure,
)
from .integral import (
    PiecewiseFn,
    SimpleFn,
    T4Certificate,
    approx_gap_witness,
    ess_sup,
    graded_integral,
    indefinite,
    integrate,
    integrate_ordinary,
    integrate_simple,
    isimple_sup_gap,
    pointwise_add_fn,
    sublevel_set,
    verify_certificate,
)
from .deficiency import (
    ClusterScenario,
    ConvexityScenario,
    LinenessScenario,
    defi_continuity,
    defi_convexity,
    defi_lineness,
)

__version__ = "0.1.0"
