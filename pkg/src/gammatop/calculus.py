"""Gamma-interior, gamma-closure and the families and sets derived from them.

All per-subset results for one operation are tabulated once, indexed by the
subset mask, since theorem sweeps query the same few subsets over and over.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .operation import Operation
from .space import FiniteSpace

CLOSED_DEFS = ("complement", "closure-point")
CLOSED_DEF_ALIASES = {"closurepoint": "closure-point", "closure_point": "closure-point"}


def normalize_closed_def(name: str) -> str:
    name = CLOSED_DEF_ALIASES.get(name, name)
    if name not in CLOSED_DEFS:
        raise ValueError(f"unknown gamma-closed definition {name!r}")
    return name


@dataclass(frozen=True)
class SubsetFamily:
    """A family of subsets of ``space`` together with the recipe that produced it."""

    space: FiniteSpace
    members: tuple[int, ...]
    recipe: str

    def __contains__(self, mask: int) -> bool:
        return mask in self._set

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.members)


class GammaCalculus:
    """First-layer structure of one operation: int, cl, gamma-open/closed, derived sets."""

    def __init__(self, op: Operation):
        self.op = op
        self.space = op.space
        n = self.space.n
        full = self.space.full
        size = 1 << n
        nbd_values = op.nbd_values

        interior = [0] * size
        closure = [0] * size
        for a in range(size):
            i = c = 0
            for x in range(n):
                vals = nbd_values[x]
                if a >> x & 1 and any(v & ~a == 0 for v in vals):
                    i |= 1 << x
                if all(v & a for v in vals):
                    c |= 1 << x
            interior[a] = i
            closure[a] = c
        self.interior = interior
        self.closure = closure
        self.gamma_open = tuple(a for a in range(size) if interior[a] == a)
        self.is_gamma_open = [interior[a] == a for a in range(size)]
        self.closed_by = {
            "complement": tuple(a for a in range(size) if self.is_gamma_open[full ^ a]),
            "closure-point": tuple(a for a in range(size) if closure[a] & ~a == 0),
        }

        derived = [0] * size
        for a in range(size):
            d = 0
            for x in range(n):
                rest = a & ~(1 << x)
                if all(u & rest for u in self.gamma_open if u >> x & 1):
                    d |= 1 << x
            derived[a] = d
        self.derived = derived

    @property
    def closed_defs_agree(self) -> bool:
        return self.closed_by["complement"] == self.closed_by["closure-point"]

    def gamma_closed(self, closed_def: str = "complement") -> tuple[int, ...]:
        return self.closed_by[normalize_closed_def(closed_def)]

    def exterior(self, a: int) -> int:
        return self.interior[self.space.full ^ a]

    def boundary(self, a: int) -> int:
        return self.space.full & ~(self.interior[a] | self.exterior(a))


@lru_cache(maxsize=65536)
def gamma_calculus(op: Operation) -> GammaCalculus:
    return GammaCalculus(op)


def _check(space: FiniteSpace, op: Operation) -> GammaCalculus:
    if op.space != space:
        raise ValueError("operation belongs to a different space")
    return gamma_calculus(op)


def int_gamma(space: FiniteSpace, op: Operation, a: int) -> int:
    """Points of ``a`` with an open neighbourhood ``N`` such that ``N^op <= a``."""
    return _check(space, op).interior[a]


def cl_gamma(space: FiniteSpace, op: Operation, a: int) -> int:
    """Points all of whose open neighbourhoods have ``U^op`` meeting ``a``."""
    return _check(space, op).closure[a]


def ext_gamma(space: FiniteSpace, op: Operation, a: int) -> int:
    return _check(space, op).exterior(a)


def bd_gamma(space: FiniteSpace, op: Operation, a: int) -> int:
    return _check(space, op).boundary(a)


def gamma_derived(space: FiniteSpace, op: Operation, a: int) -> int:
    """Points every gamma-open neighbourhood of which meets ``a`` minus the point."""
    return _check(space, op).derived[a]


def gamma_open_family(space: FiniteSpace, op: Operation) -> SubsetFamily:
    return SubsetFamily(space, _check(space, op).gamma_open, "gamma-open")


def gamma_closed_family(space: FiniteSpace, op: Operation, closed_def: str = "complement") -> tuple[SubsetFamily, bool]:
    """Gamma-closed sets under the chosen definition, plus whether both definitions agree here."""
    calc = _check(space, op)
    fam = SubsetFamily(space, calc.gamma_closed(closed_def), f"gamma-closed:{normalize_closed_def(closed_def)}")
    return fam, calc.closed_defs_agree
