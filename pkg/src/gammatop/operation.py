"""Operations on the open sets of a finite space and their classification."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Mapping

from .errors import CapExceeded, EmptySubspace, IncompleteOperationTable, OperationError
from .space import FiniteSpace, compress, format_set, is_subset, subspace, submasks

BUILTIN_KINDS = ("identity", "closure", "intcl")
KIND_ALIASES = {"interior-closure": "intcl", "int-cl": "intcl"}

OPEN_DIRECTIONS = ("paper", "standard")

EXHAUSTIVE_CAP = 1 << 16


@dataclass(frozen=True)
class Operation:
    """A table ``U -> U^op`` over the open sets of ``space``.

    ``table[i]`` is the value at ``space.opens[i]``. Every value must contain
    its open set.
    """

    space: FiniteSpace
    table: tuple[int, ...]
    kind: str = "custom"

    def __post_init__(self) -> None:
        if len(self.table) != len(self.space.opens):
            raise IncompleteOperationTable(
                f"table has {len(self.table)} values for {len(self.space.opens)} open sets"
            )
        full = self.space.full
        for u, v in zip(self.space.opens, self.table):
            if v & ~full:
                raise OperationError(f"value {v:#b} at {format_set(u)} leaves the space")
            if u & ~v:
                raise OperationError(f"value {format_set(v)} does not contain {format_set(u)}")

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.space, self.table, self.kind))

    @cached_property
    def values(self) -> dict[int, int]:
        return dict(zip(self.space.opens, self.table))

    def __call__(self, u: int) -> int:
        return self.values[u]

    @cached_property
    def nbd_values(self) -> tuple[tuple[int, ...], ...]:
        """For each point, the values at each of its open neighbourhoods."""
        return tuple(tuple(self.values[u] for u in self.space.nbds(x)) for x in range(self.space.n))

    @property
    def is_builtin(self) -> bool:
        return self.kind in BUILTIN_KINDS


def make_operation(space: FiniteSpace, mapping: Mapping[int, int], kind: str = "custom") -> Operation:
    """Build an operation from an ``open mask -> value mask`` mapping."""
    extra = [u for u in mapping if not space.is_open(u)]
    if extra:
        raise OperationError(f"{format_set(extra[0])} is not an open set")
    missing = [u for u in space.opens if u not in mapping]
    if missing:
        raise IncompleteOperationTable(f"no value given for open set {format_set(missing[0])}")
    return Operation(space, tuple(mapping[u] for u in space.opens), kind)


def normalize_kind(kind: str) -> str:
    kind = KIND_ALIASES.get(kind, kind)
    if kind not in BUILTIN_KINDS:
        raise OperationError(f"unknown operation kind {kind!r}")
    return kind


@lru_cache(maxsize=4096)
def builtin(space: FiniteSpace, kind: str) -> Operation:
    kind = normalize_kind(kind)
    if kind == "identity":
        table = space.opens
    elif kind == "closure":
        table = tuple(space.closure(u) for u in space.opens)
    else:
        table = tuple(space.interior(space.closure(u)) for u in space.opens)
    return Operation(space, tuple(table), kind)


def random_operation(space: FiniteSpace, rng: random.Random) -> Operation:
    """Enlarge each open set by every outside point independently with probability 1/2."""
    table = []
    for u in space.opens:
        v = u
        for x in range(space.n):
            if not u >> x & 1 and rng.random() < 0.5:
                v |= 1 << x
        table.append(v)
    return Operation(space, tuple(table))


def operation_count(space: FiniteSpace) -> int:
    count = 1
    for u in space.opens:
        count <<= space.n - bin(u).count("1")
    return count


def all_operations(space: FiniteSpace, cap: int = EXHAUSTIVE_CAP):
    """Every operation on the space, in lexicographic table order."""
    if operation_count(space) > cap:
        raise CapExceeded(f"{operation_count(space)} operations on {space} exceed the cap of {cap}")
    choices = [[u | s for s in submasks(space.full & ~u)] for u in space.opens]
    for table in itertools.product(*choices):
        yield Operation(space, table)


# -- classification ----------------------------------------------------------


def is_monotone(op: Operation) -> bool:
    return monotone_witness(op) is None


def monotone_witness(op: Operation) -> tuple[int, int] | None:
    """A pair of opens ``U <= V`` with ``U^op`` not inside ``V^op``, if any."""
    vals = op.values
    for u in op.space.opens:
        for v in op.space.opens:
            if is_subset(u, v) and not is_subset(vals[u], vals[v]):
                return u, v
    return None


def is_regular(op: Operation) -> bool:
    return regular_witness(op) is None


def regular_witness(op: Operation) -> tuple[int, int, int] | None:
    """A point and two of its neighbourhoods with no third neighbourhood below both values."""
    for x, values in enumerate(op.nbd_values):
        nb = op.space.nbds(x)
        for i in range(len(values)):
            for j in range(i + 1, len(values)):
                meet = values[i] & values[j]
                if not any(w & ~meet == 0 for w in values):
                    return x, nb[i], nb[j]
    return None


def is_open_operation(op: Operation, direction: str = "standard") -> bool:
    return open_witness(op, direction) is None


def open_witness(op: Operation, direction: str = "standard") -> tuple[int, int] | None:
    """A point and neighbourhood for which no suitable gamma-open set exists.

    ``paper`` asks for a gamma-open ``B`` containing the point with
    ``U^op <= B``; ``standard`` asks for ``B <= U^op`` instead.
    """
    from .calculus import gamma_calculus

    if direction not in OPEN_DIRECTIONS:
        raise ValueError(f"unknown open-operation direction {direction!r}")
    gopen = gamma_calculus(op).gamma_open
    for x in range(op.space.n):
        candidates = [b for b in gopen if b >> x & 1]
        for u in op.space.nbds(x):
            val = op(u)
            if direction == "paper":
                ok = any(val & ~b == 0 for b in candidates)
            else:
                ok = any(b & ~val == 0 for b in candidates)
            if not ok:
                return x, u
    return None


@dataclass(frozen=True)
class OperationProfile:
    monotone: bool
    regular: bool
    open_paper: bool
    open_standard: bool
    closed_defs_agree: bool

    def as_dict(self) -> dict[str, bool]:
        return {
            "monotone": self.monotone,
            "regular": self.regular,
            "open_paper": self.open_paper,
            "open_standard": self.open_standard,
            "closed_defs_agree": self.closed_defs_agree,
        }


@lru_cache(maxsize=65536)
def profile(op: Operation) -> OperationProfile:
    from .calculus import gamma_calculus

    calc = gamma_calculus(op)
    return OperationProfile(
        monotone=is_monotone(op),
        regular=is_regular(op),
        open_paper=is_open_operation(op, "paper"),
        open_standard=is_open_operation(op, "standard"),
        closed_defs_agree=calc.closed_defs_agree,
    )


# -- induced operation on a subspace -----------------------------------------

GAMMA_B_POLICIES = ("union", "flag-ambiguous")


@lru_cache(maxsize=65536)
def induced_subspace_operation(
    op: Operation, b: int, policy: str = "union"
) -> tuple[Operation | None, dict[int, tuple[int, ...]]]:
    """Operation on ``subspace(op.space, b)`` given by ``U & b -> U^op & b``.

    Returns the operation and a report of every relative open that is the
    trace of parent opens with differing values (subspace indexing). Under
    ``union`` such values are merged; under ``flag-ambiguous`` no operation is
    built when the report is non-empty.
    """
    if policy not in GAMMA_B_POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    if b == 0:
        raise EmptySubspace("subspace of the empty set")
    sub, trace = subspace(op.space, b)
    table = []
    ambiguous: dict[int, tuple[int, ...]] = {}
    for v in sub.opens:
        vals = sorted({compress(op(u), b) for u in trace[v]})
        if len(vals) > 1:
            ambiguous[v] = tuple(vals)
        merged = 0
        for w in vals:
            merged |= w
        table.append(merged)
    if ambiguous and policy == "flag-ambiguous":
        return None, ambiguous
    return Operation(sub, tuple(table), op.kind if not ambiguous and op.kind == "identity" else "custom"), ambiguous
