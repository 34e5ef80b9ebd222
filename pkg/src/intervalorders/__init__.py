"""Interval orders, biorders and their continuous two-function representations
on finite spaces, with exact rational arithmetic throughout."""

from .audit import audit_interval_orders, audit_biorders
from .biorders import (
    FiniteBiorder,
    biorder_traces,
    biorder_weakly_continuous,
    check_ferrers_biorder,
    check_jointly_dense,
    construct_biorder_representation,
    decide_continuous_biorder_representation,
    verify_biorder_almost_representation,
    verify_biorder_representation,
)
from .constraints import Constraint, ConstraintSystem
from .relations import (
    FiniteRelation,
    NotIntervalOrderError,
    check_axioms,
    compose,
    equivalence_classes,
    sections,
    strict_part,
    trace_classes,
    traces,
)
from .repcore import (
    FunctionPair,
    check_io_separability,
    construct_representation,
    decide_continuous_representation,
    dyadic_combine,
    is_weakly_continuous,
    verify_almost_representation,
    verify_representation,
)
from .scales import (
    DyadicScale,
    check_propweak_conditions,
    scale_to_function,
    scales_from_pair,
    validate_scale,
)
from .topology import (
    FiniteTopology,
    check_almost_semicontinuity,
    closure,
    components,
    is_continuous,
    is_monotone_set,
    relation_semicontinuity,
)

__version__ = "0.1.0"
