"""Functions between finite spaces and the six map classifications.

Every ``*_witness`` function returns ``None`` when the map has the property
and otherwise the set (or point/set pair) that breaks it. The ``is_*``
functions are the boolean views.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from .errors import PointOutOfRange
from .operation import Operation, induced_subspace_operation
from .semi import SemiCalculus, semi_calculus
from .space import FiniteSpace, compress, points_of


@dataclass(frozen=True)
class FunctionTable:
    """A total function ``dom -> cod`` with tabulated images and preimages."""

    dom: FiniteSpace
    cod: FiniteSpace
    f: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.f) != self.dom.n:
            raise ValueError(f"map defines {len(self.f)} images for {self.dom.n} points")
        for x, y in enumerate(self.f):
            if not 0 <= y < self.cod.n:
                raise PointOutOfRange(f"image {y} of point {x} outside 0..{self.cod.n - 1}")

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.dom, self.cod, self.f))

    @cached_property
    def images(self) -> list[int]:
        out = [0] * (1 << self.dom.n)
        for a in range(1, 1 << self.dom.n):
            low = (a & -a).bit_length() - 1
            out[a] = out[a & (a - 1)] | 1 << self.f[low]
        return out

    @cached_property
    def preimages(self) -> list[int]:
        single = [0] * self.cod.n
        for x, y in enumerate(self.f):
            single[y] |= 1 << x
        out = [0] * (1 << self.cod.n)
        for b in range(1, 1 << self.cod.n):
            low = (b & -b).bit_length() - 1
            out[b] = out[b & (b - 1)] | single[low]
        return out

    @cached_property
    def injective(self) -> bool:
        return len(set(self.f)) == len(self.f)

    @cached_property
    def surjective(self) -> bool:
        return len(set(self.f)) == self.cod.n

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


@lru_cache(maxsize=1 << 16)
def function_table(dom: FiniteSpace, cod: FiniteSpace, f: tuple[int, ...]) -> FunctionTable:
    return FunctionTable(dom, cod, tuple(f))


class PointMap:
    """A function paired with an operation on each side (``gamma`` on the domain, ``beta`` on the codomain)."""

    __slots__ = ("gamma", "beta", "table", "closed_def", "X", "Y")

    def __init__(self, gamma: Operation, beta: Operation, f: Sequence[int], closed_def: str = "complement"):
        self.gamma = gamma
        self.beta = beta
        self.table = function_table(gamma.space, beta.space, tuple(f))
        self.closed_def = closed_def
        self.X: SemiCalculus = semi_calculus(gamma, closed_def)
        self.Y: SemiCalculus = semi_calculus(beta, closed_def)

    @property
    def f(self) -> tuple[int, ...]:
        return self.table.f

    @property
    def dom(self) -> FiniteSpace:
        return self.gamma.space

    @property
    def cod(self) -> FiniteSpace:
        return self.beta.space

    @property
    def injective(self) -> bool:
        return self.table.injective

    @property
    def surjective(self) -> bool:
        return self.table.surjective

    @property
    def bijective(self) -> bool:
        return self.table.bijective

    def image(self, a: int) -> int:
        return self.table.images[a]

    def preimage(self, b: int) -> int:
        return self.table.preimages[b]

    def __repr__(self) -> str:
        return f"PointMap(f={self.f}, gamma={self.gamma.kind}, beta={self.beta.kind})"


def compose(first: PointMap, second: PointMap) -> PointMap:
    """``second o first``; the middle operations are dropped."""
    if first.cod != second.dom:
        raise ValueError("maps are not composable")
    return PointMap(first.gamma, second.beta, tuple(second.f[y] for y in first.f), first.closed_def)


def restrict(m: PointMap, a: int, b: int, policy: str = "union") -> PointMap | None:
    """The map ``a -> b`` on subspaces with induced operations.

    Requires ``f(a) <= b``. Returns ``None`` when the policy refuses an
    ambiguous induced operation.
    """
    if m.image(a) & ~b:
        raise ValueError("image of the domain subset escapes the codomain subset")
    gamma, _ = induced_subspace_operation(m.gamma, a, policy)
    beta, _ = induced_subspace_operation(m.beta, b, policy)
    if gamma is None or beta is None:
        return None
    f = tuple(compress(1 << m.f[x], b).bit_length() - 1 for x in points_of(a))
    return PointMap(gamma, beta, f, m.closed_def)


# -- gamma-semi classes --------------------------------------------------------


def semi_continuity_witness(m: PointMap) -> int | None:
    """A gamma-open set of the codomain whose preimage is not semi-open."""
    so = m.X.is_semi_open
    pre = m.table.preimages
    for b in m.Y.gamma_open:
        if not so[pre[b]]:
            return b
    return None


def semi_open_map_witness(m: PointMap) -> int | None:
    """A gamma-open set of the domain whose image is not semi-open."""
    so = m.Y.is_semi_open
    img = m.table.images
    for u in m.X.gamma_open:
        if not so[img[u]]:
            return u
    return None


def semi_closed_map_witness(m: PointMap) -> int | None:
    sc = m.Y.is_semi_closed
    img = m.table.images
    for u in m.X.gamma_closed:
        if not sc[img[u]]:
            return u
    return None


def is_gamma_semi_continuous(m: PointMap) -> bool:
    return semi_continuity_witness(m) is None


def is_gamma_semi_open_map(m: PointMap) -> bool:
    return semi_open_map_witness(m) is None


def is_gamma_semi_closed_map(m: PointMap) -> bool:
    return semi_closed_map_witness(m) is None


# -- (gamma, beta) classes -----------------------------------------------------


def gb_continuity_witness(m: PointMap, mode: str = "pointwise"):
    """Witness against (gamma, beta)-continuity.

    ``pointwise`` looks for a point ``x`` and open ``V`` around ``f(x)`` such
    that no open ``U`` around ``x`` has ``f(U^gamma) <= V^beta``; the witness
    is ``(x, V)``. ``preimage`` looks for a beta-open ``V`` whose preimage is
    not gamma-open.
    """
    img = m.table.images
    if mode == "pointwise":
        gvals = m.gamma.nbd_values
        for x in range(m.dom.n):
            y = m.f[x]
            for v in m.cod.nbds(y):
                vb = m.beta(v)
                if not any(img[w] & ~vb == 0 for w in gvals[x]):
                    return x, v
        return None
    if mode == "preimage":
        pre = m.table.preimages
        gopen = m.X.is_gamma_open
        for v in m.Y.gamma_open:
            if not gopen[pre[v]]:
                return v
        return None
    raise ValueError(f"unknown continuity mode {mode!r}")


def is_gb_continuous(m: PointMap, mode: str = "pointwise") -> bool:
    return gb_continuity_witness(m, mode) is None


def gb_open_witness(m: PointMap) -> int | None:
    img = m.table.images
    target = m.Y.is_gamma_open
    for a in m.X.gamma_open:
        if not target[img[a]]:
            return a
    return None


def gb_closed_witness(m: PointMap) -> int | None:
    img = m.table.images
    target = m.Y.is_gamma_closed
    for a in m.X.gamma_closed:
        if not target[img[a]]:
            return a
    return None


def is_gb_open_map(m: PointMap) -> bool:
    return gb_open_witness(m) is None


def is_gb_closed_map(m: PointMap) -> bool:
    return gb_closed_witness(m) is None


CLASSIFIERS = {
    "gamma-semi-continuous": semi_continuity_witness,
    "gamma-semi-open": semi_open_map_witness,
    "gamma-semi-closed": semi_closed_map_witness,
    "gb-continuous(pointwise)": lambda m: gb_continuity_witness(m, "pointwise"),
    "gb-continuous(preimage)": lambda m: gb_continuity_witness(m, "preimage"),
    "gb-open": gb_open_witness,
    "gb-closed": gb_closed_witness,
}


def classify(m: PointMap) -> dict[str, object]:
    """Witness (or ``None``) for every classification, in a fixed order."""
    return {name: fn(m) for name, fn in CLASSIFIERS.items()}
