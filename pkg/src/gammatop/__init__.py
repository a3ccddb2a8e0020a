"""Finite-topology lab for operations on open sets and the sets they generate."""

from .calculus import gamma_calculus
from .errors import (
    CapExceeded,
    EmptySubspace,
    GammaTopError,
    IncompleteOperationTable,
    OperationError,
    ParseError,
    PointOutOfRange,
    TopologyError,
    UnknownReference,
)
from .maps import PointMap, classify
from .operation import Operation, builtin, make_operation, profile
from .semi import semi_calculus
from .space import FiniteSpace, enumerate_topologies, space_from_sets, validate_topology
from .textio import parse_document, render_document

__all__ = [
    "CapExceeded",
    "EmptySubspace",
    "FiniteSpace",
    "GammaTopError",
    "IncompleteOperationTable",
    "Operation",
    "OperationError",
    "ParseError",
    "PointMap",
    "PointOutOfRange",
    "TopologyError",
    "UnknownReference",
    "builtin",
    "classify",
    "enumerate_topologies",
    "gamma_calculus",
    "make_operation",
    "parse_document",
    "profile",
    "render_document",
    "semi_calculus",
    "space_from_sets",
    "validate_topology",
]
