"""Finite topological spaces on the points ``0..n-1``.

Subsets are int bit masks (bit ``i`` set means point ``i`` is a member) and a
topology is stored as the ascending tuple of its open masks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

from .errors import CapExceeded, EmptySubspace, PointOutOfRange, TopologyError, Violation

MAX_POINTS = 6
DEFAULT_POINT_CAP = 5


def bit(x: int) -> int:
    return 1 << x


def points_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, ascending from the empty set."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def format_set(mask: int, sep: str = ",") -> str:
    return "{" + sep.join(map(str, points_of(mask))) + "}"


def compress(mask: int, b: int) -> int:
    """Re-index ``mask & b`` onto the points of ``b`` numbered ``0..|b|-1``."""
    out = 0
    for i, p in enumerate(points_of(b)):
        if mask >> p & 1:
            out |= 1 << i
    return out


def expand(mask: int, b: int) -> int:
    """Inverse of :func:`compress`."""
    out = 0
    for i, p in enumerate(points_of(b)):
        if mask >> i & 1:
            out |= 1 << p
    return out


@dataclass(frozen=True, eq=True)
class FiniteSpace:
    """A topology on ``{0..n-1}``; build untrusted input via :func:`validate_topology`."""

    n: int
    opens: tuple[int, ...]

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.n, self.opens))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def open_set(self) -> frozenset[int]:
        return frozenset(self.opens)

    def is_open(self, mask: int) -> bool:
        return mask in self.open_set

    @cached_property
    def closeds(self) -> tuple[int, ...]:
        return tuple(sorted(self.full ^ u for u in self.opens))

    @cached_property
    def _nbds(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(u for u in self.opens if u >> x & 1) for x in range(self.n))

    def nbds(self, x: int) -> tuple[int, ...]:
        """Open sets containing the point ``x``."""
        return self._nbds[x]

    def interior(self, mask: int) -> int:
        out = 0
        for u in self.opens:
            if u & ~mask == 0:
                out |= u
        return out

    def closure(self, mask: int) -> int:
        out = self.full
        for c in self.closeds:
            if mask & ~c == 0:
                out &= c
        return out

    def __str__(self) -> str:
        return f"FiniteSpace(n={self.n}, opens=[{' '.join(format_set(u) for u in self.opens)}])"


def topology_violations(n: int, family: Iterable[int]) -> list[Violation]:
    """Every axiom the family breaks, each with a witness; empty when valid."""
    if n < 1:
        raise ValueError("a space needs at least one point")
    fam = set(family)
    full = (1 << n) - 1
    out: list[Violation] = []
    for u in sorted(fam):
        if u < 0 or u & ~full:
            out.append(Violation("PointOutOfRange", (u,)))
    if 0 not in fam or full not in fam:
        out.append(Violation("MissingEmptyOrWhole"))
    members = sorted(fam)
    for a, b in itertools.combinations(members, 2):
        if a | b not in fam:
            out.append(Violation("NotClosedUnderUnion", (a, b)))
    for a, b in itertools.combinations(members, 2):
        if a & b not in fam:
            out.append(Violation("NotClosedUnderIntersection", (a, b)))
    return out


def validate_topology(n: int, family: Iterable[int]) -> FiniteSpace:
    """Return the space on ``n`` points with the given open masks or raise TopologyError."""
    fam = set(family)
    violations = topology_violations(n, fam)
    if violations:
        raise TopologyError(violations)
    return FiniteSpace(n, tuple(sorted(fam)))


def space_from_sets(n: int, family: Iterable[Iterable[int]]) -> FiniteSpace:
    masks = []
    for s in family:
        pts = list(s)
        bad = [p for p in pts if not 0 <= p < n]
        if bad:
            raise PointOutOfRange(f"point {bad[0]} outside 0..{n - 1}")
        masks.append(mask_of(pts))
    return validate_topology(n, masks)


def discrete(n: int) -> FiniteSpace:
    return FiniteSpace(n, tuple(range(1 << n)))


def indiscrete(n: int) -> FiniteSpace:
    return FiniteSpace(n, (0, (1 << n) - 1))


def sierpinski() -> FiniteSpace:
    return FiniteSpace(2, (0, 1, 3))


# -- enumeration -------------------------------------------------------------


def check_cap(n: int, allow_six: bool = False) -> None:
    cap = MAX_POINTS if allow_six else DEFAULT_POINT_CAP
    if n < 1:
        raise ValueError("point count must be positive")
    if n > cap:
        hint = "" if n > MAX_POINTS else " (pass allow_six for 6 points)"
        raise CapExceeded(f"{n} points exceeds the enumeration cap of {cap}{hint}")


def _preorders(n: int) -> list[tuple[int, ...]]:
    """All preorders on n points, each given as the down-set mask of every point."""
    orders: list[tuple[int, ...]] = [()]
    for k in range(n):
        nxt = []
        for down in orders:
            down_closed = [d for d in range(1 << k) if all(down[i] & ~d == 0 for i in points_of(d))]
            for d in down_closed:
                # candidates for the up-set: points whose down-set contains all of d
                above = mask_of(i for i in range(k) if d & ~down[i] == 0)
                for u in submasks(above):
                    if any(down[j] >> i & 1 and not u >> j & 1 for i in points_of(u) for j in range(k)):
                        continue
                    new = list(down)
                    for i in points_of(u):
                        new[i] |= 1 << k
                    new.append(d | 1 << k)
                    nxt.append(tuple(new))
        orders = nxt
    return orders


def _opens_of_preorder(down: tuple[int, ...]) -> tuple[int, ...]:
    fam = {0}
    for d in down:
        fam |= {s | d for s in fam}
    return tuple(sorted(fam))


@lru_cache(maxsize=None)
def _labeled(n: int) -> tuple[FiniteSpace, ...]:
    opens = sorted(_opens_of_preorder(d) for d in _preorders(n))
    return tuple(FiniteSpace(n, o) for o in opens)


@lru_cache(maxsize=None)
def _perm_tables(n: int) -> tuple[tuple[int, ...], ...]:
    tables = []
    for perm in itertools.permutations(range(n)):
        tables.append(tuple(mask_of(perm[i] for i in points_of(m)) for m in range(1 << n)))
    return tuple(tables)


def permute(space: FiniteSpace, perm: tuple[int, ...]) -> FiniteSpace:
    """Relabel point ``i`` as ``perm[i]``."""
    return FiniteSpace(space.n, tuple(sorted(mask_of(perm[i] for i in points_of(u)) for u in space.opens)))


def canonical_form(space: FiniteSpace) -> tuple[int, ...]:
    """Minimum sorted open encoding over all relabelings of the points."""
    return min(tuple(sorted(t[u] for u in space.opens)) for t in _perm_tables(space.n))


def is_canonical(space: FiniteSpace) -> bool:
    opens = space.opens
    for t in _perm_tables(space.n):
        if tuple(sorted(t[u] for u in opens)) < opens:
            return False
    return True


def enumerate_topologies(n: int, up_to_iso: bool = False, allow_six: bool = False) -> Iterator[FiniteSpace]:
    """Every topology on ``n`` labeled points, ordered by sorted open encoding.

    With ``up_to_iso`` only the member of each homeomorphism class with the
    minimal encoding is produced.
    """
    check_cap(n, allow_six)
    for space in _labeled(n):
        if not up_to_iso or is_canonical(space):
            yield space


def spaces_up_to(max_points: int, up_to_iso: bool = False, allow_six: bool = False) -> list[FiniteSpace]:
    out: list[FiniteSpace] = []
    for n in range(1, max_points + 1):
        out.extend(enumerate_topologies(n, up_to_iso, allow_six))
    return out


# -- subspaces ---------------------------------------------------------------


def subspace(space: FiniteSpace, b: int) -> tuple[FiniteSpace, dict[int, tuple[int, ...]]]:
    """Relative topology on the points of ``b``, re-indexed ``0..|b|-1``.

    The second value maps every relative open (in subspace indexing) to the
    parent opens whose trace on ``b`` it is.
    """
    if b == 0:
        raise EmptySubspace("subspace of the empty set")
    if b & ~space.full:
        raise PointOutOfRange(f"subset {format_set(b)} not inside a {space.n}-point space")
    trace: dict[int, list[int]] = {}
    for u in space.opens:
        trace.setdefault(compress(u, b), []).append(u)
    sub = FiniteSpace(popcount(b), tuple(sorted(trace)))
    return sub, {v: tuple(us) for v, us in sorted(trace.items())}
