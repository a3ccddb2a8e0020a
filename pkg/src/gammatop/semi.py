"""Semi-open and semi-closed structure built on top of the gamma-calculus."""

from __future__ import annotations

from functools import lru_cache

from .calculus import GammaCalculus, SubsetFamily, gamma_calculus, normalize_closed_def
from .operation import Operation
from .space import FiniteSpace, submasks


class SemiCalculus:
    """Everything the theorem checks need for one (operation, closed-set definition) pair.

    Semi-closed sets are computed from their own definition, never by
    complementing the semi-open family; :attr:`duality_holds` records whether
    the two agree.
    """

    def __init__(self, op: Operation, closed_def: str = "complement"):
        self.op = op
        self.space = op.space
        self.closed_def = normalize_closed_def(closed_def)
        g: GammaCalculus = gamma_calculus(op)
        self.gamma = g
        self.interior = g.interior
        self.closure = g.closure
        self.derived = g.derived
        self.gamma_open = g.gamma_open
        self.is_gamma_open = g.is_gamma_open
        self.gamma_closed = g.gamma_closed(self.closed_def)

        full = self.space.full
        size = 1 << self.space.n
        is_gamma_closed = [False] * size
        for a in self.gamma_closed:
            is_gamma_closed[a] = True
        self.is_gamma_closed = is_gamma_closed

        is_so = [False] * size
        for o in self.gamma_open:
            c = g.closure[o]
            for s in submasks(c & ~o):
                is_so[o | s] = True
        is_sc = [False] * size
        for f in self.gamma_closed:
            i = g.interior[f]
            for s in submasks(f & ~i):
                is_sc[i | s] = True
        self.is_semi_open = is_so
        self.is_semi_closed = is_sc
        self.semi_open = tuple(a for a in range(size) if is_so[a])
        self.semi_closed = tuple(a for a in range(size) if is_sc[a])
        self.duality_holds = all(is_sc[a] == is_so[full ^ a] for a in range(size))

        scl = [full] * size
        sint = [0] * size
        for a in range(size):
            hull = full
            for c in self.semi_closed:
                if a & ~c == 0:
                    hull &= c
            scl[a] = hull
            kernel = 0
            for u in self.semi_open:
                if u & ~a == 0:
                    kernel |= u
            sint[a] = kernel
        self.scl = scl
        self.sint = sint

        sd = [0] * size
        for a in range(size):
            d = 0
            for p in range(self.space.n):
                rest = a & ~(1 << p)
                if all(u & rest for u in self.semi_open if u >> p & 1):
                    d |= 1 << p
            sd[a] = d
        self.sd = sd
        self._semi_nbds: dict[int, list[int]] = {}

    def is_semi_nbd(self, a: int, x: int) -> bool:
        for u in self.semi_open:
            if u >> x & 1 and u & ~a == 0:
                return True
        return False

    def semi_nbds(self, x: int) -> list[int]:
        """Every subset that is a semi-neighbourhood of ``x``."""
        if x not in self._semi_nbds:
            self._semi_nbds[x] = [a for a in range(1 << self.space.n) if self.is_semi_nbd(a, x)]
        return self._semi_nbds[x]


@lru_cache(maxsize=65536)
def semi_calculus(op: Operation, closed_def: str = "complement") -> SemiCalculus:
    return SemiCalculus(op, closed_def)


def _check(space: FiniteSpace, op: Operation, closed_def: str = "complement") -> SemiCalculus:
    if op.space != space:
        raise ValueError("operation belongs to a different space")
    return semi_calculus(op, normalize_closed_def(closed_def))


def semi_open_family(space: FiniteSpace, op: Operation) -> SubsetFamily:
    """Sets squeezed between a gamma-open set and its gamma-closure."""
    return SubsetFamily(space, _check(space, op).semi_open, "semi-open")


def semi_closed_family(
    space: FiniteSpace, op: Operation, closed_def: str = "complement"
) -> tuple[SubsetFamily, bool]:
    """Sets between ``int(F)`` and ``F`` for some gamma-closed ``F``.

    The flag reports whether the family equals the complements of the
    semi-open family on this space.
    """
    calc = _check(space, op, closed_def)
    return SubsetFamily(space, calc.semi_closed, f"semi-closed:{calc.closed_def}"), calc.duality_holds


def scl(space: FiniteSpace, op: Operation, a: int, closed_def: str = "complement") -> int:
    return _check(space, op, closed_def).scl[a]


def sint(space: FiniteSpace, op: Operation, a: int) -> int:
    return _check(space, op).sint[a]


def is_semi_nbd(space: FiniteSpace, op: Operation, a: int, x: int) -> bool:
    return _check(space, op).is_semi_nbd(a, x)


def sd(space: FiniteSpace, op: Operation, a: int) -> int:
    """Points every semi-open neighbourhood of which meets ``a`` minus the point."""
    return _check(space, op).sd[a]
