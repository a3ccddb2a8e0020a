"""Registry of every checkable statement, as decidable claims over finite instances.

A claim is a function of one instance returning ``None`` when the statement
holds there and otherwise a JSON-ready witness dict. Equivalences are split
into one spec per implication direction, with ids like ``T3.1:1-2`` (part 1
implies part 2).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from . import maps as M
from .calculus import normalize_closed_def
from .operation import GAMMA_B_POLICIES, OPEN_DIRECTIONS, Operation, builtin, induced_subspace_operation, profile
from .semi import SemiCalculus, semi_calculus
from .space import compress, expand, points_of


@dataclass(frozen=True)
class Config:
    closed_def: str = "complement"
    open_dir: str = "standard"
    gamma_b_policy: str = "union"

    def __post_init__(self) -> None:
        object.__setattr__(self, "closed_def", normalize_closed_def(self.closed_def))
        if self.open_dir not in OPEN_DIRECTIONS:
            raise ValueError(f"unknown open-operation direction {self.open_dir!r}")
        if self.gamma_b_policy not in GAMMA_B_POLICIES:
            raise ValueError(f"unknown gamma_B policy {self.gamma_b_policy!r}")

    def as_dict(self) -> dict[str, str]:
        return {"closed_def": self.closed_def, "open_dir": self.open_dir, "gamma_b_policy": self.gamma_b_policy}


def S(mask: int) -> list[int]:
    return list(points_of(mask))


# -- instances ---------------------------------------------------------------


class SpaceInstance:
    shape = "space"

    def __init__(self, op: Operation, cfg: Config):
        self.op = op
        self.cfg = cfg
        self.S: SemiCalculus = semi_calculus(op, cfg.closed_def)
        self.full = op.space.full
        self.size = 1 << op.space.n

    def ops(self, target: str) -> list[Operation]:
        return [self.op]

    def fns(self, target: str) -> list[M.FunctionTable]:
        return []

    def subspaces_unambiguous(self) -> bool:
        return True


class SubspaceInstance(SpaceInstance):
    shape = "subspace"

    def __init__(self, op: Operation, b: int, cfg: Config):
        super().__init__(op, cfg)
        self.b = b

    def subspaces_unambiguous(self) -> bool:
        return not induced_subspace_operation(self.op, self.b, "union")[1]


class MapInstance:
    shape = "map"

    def __init__(self, m: M.PointMap, cfg: Config):
        self.m = m
        self.cfg = cfg

    def ops(self, target: str) -> list[Operation]:
        if target == "gamma":
            return [self.m.gamma]
        if target == "beta":
            return [self.m.beta]
        return [self.m.gamma, self.m.beta]

    def fns(self, target: str) -> list[M.FunctionTable]:
        return [self.m.table]

    def subspaces_unambiguous(self) -> bool:
        m = self.m
        for v in m.Y.gamma_open:
            d = m.preimage(v)
            if v and d:
                if induced_subspace_operation(m.gamma, d, "union")[1] or induced_subspace_operation(m.beta, v, "union")[1]:
                    return False
        return True


class TripleInstance:
    shape = "triple"

    def __init__(self, f: M.PointMap, g: M.PointMap, cfg: Config):
        self.f = f
        self.g = g
        self.cfg = cfg
        self.gf = M.compose(f, g)

    def ops(self, target: str) -> list[Operation]:
        table = {"gamma": [self.f.gamma], "beta": [self.f.beta], "alpha": [self.g.beta]}
        return table.get(target, [self.f.gamma, self.f.beta, self.g.beta])

    def fns(self, target: str) -> list[M.FunctionTable]:
        if target == "g":
            return [self.g.table]
        if target == "f":
            return [self.f.table]
        return [self.f.table, self.g.table]

    def subspaces_unambiguous(self) -> bool:
        return True


# -- hypotheses --------------------------------------------------------------

HYPOTHESIS_NAMES = (
    "op-open",
    "op-monotone",
    "op-regular",
    "op-builtin",
    "map-injective",
    "map-surjective",
    "map-bijective",
    "subspace-gammaB-unambiguous",
    "closed-defs-agree",
)


@dataclass(frozen=True)
class Hyp:
    """A named hypothesis; ``target`` picks which operation(s) or map it constrains."""

    name: str
    target: str = "all"

    def __post_init__(self) -> None:
        if self.name not in HYPOTHESIS_NAMES:
            raise ValueError(f"hypothesis {self.name!r} is not in the vocabulary")

    def __str__(self) -> str:
        return self.name if self.target == "all" else f"{self.name}@{self.target}"

    def holds(self, inst) -> bool:
        name = self.name
        if name.startswith("op-"):
            ops = inst.ops(self.target)
            if name == "op-builtin":
                return all(op.is_builtin for op in ops)
            if name == "op-open":
                attr = "open_paper" if inst.cfg.open_dir == "paper" else "open_standard"
            else:
                attr = name[3:]
            return all(getattr(profile(op), attr) for op in ops)
        if name.startswith("map-"):
            attr = name[4:]
            return all(getattr(t, attr) for t in inst.fns(self.target))
        if name == "closed-defs-agree":
            return all(profile(op).closed_defs_agree for op in inst.ops("all"))
        return inst.subspaces_unambiguous()


@dataclass(frozen=True)
class TheoremSpec:
    id: str
    statement: str
    shape: str
    hypotheses: tuple[Hyp, ...]
    claim: Callable[[object], dict | None] = field(repr=False, compare=False)
    variant: str = "as-stated"
    uses_subspace: bool = False

    @property
    def base(self) -> str:
        return self.id.split(":")[0].split("/")[0]

    def effective_hypotheses(self, cfg: Config, drop: frozenset[str] = frozenset()) -> tuple[Hyp, ...]:
        hyps = [h for h in self.hypotheses if h.name not in drop and str(h) not in drop]
        if self.uses_subspace and cfg.gamma_b_policy == "flag-ambiguous":
            if not any(h.name == "subspace-gammaB-unambiguous" for h in hyps):
                hyps.append(Hyp("subspace-gammaB-unambiguous"))
        return tuple(hyps)


# -- space-level claims ----------------------------------------------------------


def _per_subset(c1: Callable, c2: Callable, tag: str) -> Callable:
    """Claim: for every subset A, c1(A) implies c2(A)."""

    def claim(inst):
        for a in range(inst.size):
            if c1(inst, a) and not c2(inst, a):
                return {"violates": tag, "A": S(a)}
        return None

    return claim


def _l22_in_scl(inst, a, x):
    return inst.S.scl[a] >> x & 1 == 1


def _l22_nbds_meet(inst, a, x):
    return all(n & a for n in inst.S.semi_nbds(x))


def _pointwise(c1: Callable, c2: Callable, tag: str, point: str = "x") -> Callable:
    """Claim: for every subset A and point, c1 implies c2."""

    def claim(inst):
        for a in range(inst.size):
            for x in range(inst.op.space.n):
                if c1(inst, a, x) and not c2(inst, a, x):
                    return {"violates": tag, "A": S(a), point: x}
        return None

    return claim


def _sd_has(inst, a, p):
    return inst.S.sd[a] >> p & 1 == 1


def _scl_minus(inst, a, p):
    return inst.S.scl[a & ~(1 << p)] >> p & 1 == 1


def _t541(inst):
    s = inst.S
    for a in range(inst.size):
        if s.scl[a] != a | s.sd[a]:
            return {"A": S(a), "scl": S(s.scl[a]), "A|sd": S(a | s.sd[a])}
    return None


def _t542(inst):
    sd = inst.S.sd
    for a in range(inst.size):
        for b in range(a, inst.size):
            if sd[a | b] != sd[a] | sd[b]:
                return {"A": S(a), "B": S(b), "sd(A|B)": S(sd[a | b]), "sd(A)|sd(B)": S(sd[a] | sd[b])}
    return None


def _t543(inst):
    sd = inst.S.sd
    subsets = range(inst.size)
    sizes = range(1, inst.size + 1) if inst.size <= 8 else range(1, 4)
    for k in sizes:
        for fam in itertools.combinations(subsets, k):
            union = 0
            lhs = 0
            for a in fam:
                union |= a
                lhs |= sd[a]
            if lhs != sd[union]:
                return {"family": [S(a) for a in fam], "union of sd": S(lhs), "sd of union": S(sd[union])}
    return None


def _t544(inst):
    sd = inst.S.sd
    for a in range(inst.size):
        if sd[sd[a]] & ~sd[a]:
            return {"A": S(a), "sd(A)": S(sd[a]), "sd(sd(A))": S(sd[sd[a]])}
    return None


def _t545(inst):
    s = inst.S
    for a in range(inst.size):
        d = s.sd[a]
        if s.scl[d] != d:
            return {"A": S(a), "sd(A)": S(d), "scl(sd(A))": S(s.scl[d])}
    return None


def _is_sc(inst, a):
    return inst.S.is_semi_closed[a]


def _intcl_inside(inst, a):
    s = inst.S
    return s.interior[s.closure[a]] & ~a == 0


def _compl_so(inst, a):
    return inst.S.is_semi_open[inst.full ^ a]


def _aux_l23(inst):
    s = inst.S
    for u in s.gamma_open:
        for a in range(inst.size):
            if u & s.closure[a] & ~s.closure[u & a]:
                return {"U": S(u), "A": S(a)}
    return None


def _d10(inst):
    s = inst.S
    for a in range(inst.size):
        for f in s.gamma_closed:
            if a & ~f == 0 and s.closure[a] & ~f:
                return {"A": S(a), "F": S(f), "cl(A)": S(s.closure[a])}
    return None


# -- subspace claims ---------------------------------------------------------------


def _induced(inst):
    op, _ = induced_subspace_operation(inst.op, inst.b, inst.cfg.gamma_b_policy)
    return op


def _c3b(inst):
    sub = _induced(inst)
    if sub is None:
        return None
    b = inst.b
    s = inst.S
    sub_cl = semi_calculus(sub, inst.cfg.closed_def).closure
    for u in inst.op.space.opens:
        rel = expand(sub_cl[compress(u, b)], b)
        mid = s.closure[u & b]
        outer = s.closure[u] & s.closure[b]
        if rel & ~mid:
            return {"violates": "cl_B(U&B) <= cl(U&B)", "U": S(u), "B": S(b), "cl_B": S(rel), "cl": S(mid)}
        if mid & ~outer:
            return {"violates": "cl(U&B) <= cl(U)&cl(B)", "U": S(u), "B": S(b), "cl": S(mid), "bound": S(outer)}
    return None


def _t39(inst):
    b = inst.b
    s = inst.S
    if not s.is_semi_open[b]:
        return None
    sub = _induced(inst)
    if sub is None:
        return None
    sub_so = semi_calculus(sub, inst.cfg.closed_def).is_semi_open
    for a in range(inst.size):
        if a & ~b == 0 and sub_so[compress(a, b)] and not s.is_semi_open[a]:
            return {"A": S(a), "B": S(b)}
    return None


# -- map conditions (None = condition holds) -----------------------------------------


def _wrap(key: str, w):
    if w is None:
        return None
    if isinstance(w, tuple):
        return {"x": w[0], key: S(w[1])}
    return {key: S(w)}


def c_semi_open(inst):
    return _wrap("U", M.semi_open_map_witness(inst.m))


def c_semi_closed(inst):
    return _wrap("F", M.semi_closed_map_witness(inst.m))


def c_semi_cont(inst):
    return _wrap("B", M.semi_continuity_witness(inst.m))


def c_gb_pointwise(inst):
    return _wrap("V", M.gb_continuity_witness(inst.m, "pointwise"))


def c_gb_preimage(inst):
    return _wrap("V", M.gb_continuity_witness(inst.m, "preimage"))


def c_gb_open(inst):
    return _wrap("A", M.gb_open_witness(inst.m))


def _all_subsets_of(space):
    return range(1 << space.n)


def c31_2(inst):
    m = inst.m
    img = m.table.images
    for a in _all_subsets_of(m.dom):
        lhs = img[m.X.interior[a]]
        rhs = m.Y.sint[img[a]]
        if lhs & ~rhs:
            return {"A": S(a), "f(int(A))": S(lhs), "sint(f(A))": S(rhs)}
    return None


def c31_3(inst):
    m = inst.m
    img = m.table.images
    for x in range(m.dom.n):
        for u in m.X.gamma_open:
            if u >> x & 1 and not m.Y.is_semi_nbd(img[u], m.f[x]):
                return {"x": x, "U": S(u)}
    return None


def c32_2(inst):
    m = inst.m
    pre = m.table.preimages
    for b in _all_subsets_of(m.cod):
        if pre[m.Y.scl[b]] & ~m.X.closure[pre[b]]:
            return {"B": S(b)}
    return None


def c36_2(inst):
    m = inst.m
    pre = m.table.preimages
    for b in _all_subsets_of(m.cod):
        if pre[m.Y.closure[b]] & ~m.X.closure[pre[b]]:
            return {"B": S(b)}
    return None


def c36_3(inst):
    m = inst.m
    pre = m.table.preimages
    gx, gy = m.X.gamma, m.Y.gamma
    for b in _all_subsets_of(m.cod):
        if pre[gy.boundary(b)] & ~gx.boundary(pre[b]):
            return {"B": S(b)}
    return None


def c37(inst):
    m = inst.m
    pre = m.table.preimages
    for b in m.Y.semi_open:
        if not m.X.is_semi_open[pre[b]]:
            return {"B": S(b)}
    return None


def c313(inst):
    m = inst.m
    pre = m.table.preimages
    for b in m.Y.semi_closed:
        if not m.X.is_semi_closed[pre[b]]:
            return {"B": S(b)}
    return None


def c310(inst):
    m = inst.m
    for v in m.Y.gamma_open:
        d = m.preimage(v)
        if not v or not d:
            continue
        r = M.restrict(m, d, v, inst.cfg.gamma_b_policy)
        if r is None:
            continue
        w = M.semi_open_map_witness(r)
        if w is not None:
            return {"V": S(v), "U_rel": S(expand(w, d))}
    return None


def c311_2(inst):
    m = inst.m
    pre = m.table.preimages
    for v in _all_subsets_of(m.cod):
        for f in m.X.gamma_closed:
            if pre[v] & ~f:
                continue
            if not any(v & ~g == 0 and pre[g] & ~f == 0 for g in m.Y.semi_closed):
                return {"V": S(v), "F": S(f)}
    return None


def c41_2(inst):
    m = inst.m
    img = m.table.images
    for a in _all_subsets_of(m.dom):
        inner = m.Y.interior[m.Y.closure[img[a]]]
        if inner & ~img[m.X.closure[a]]:
            return {"A": S(a)}
    return None


def c42_2(inst):
    m = inst.m
    img = m.table.images
    for a in _all_subsets_of(m.dom):
        if m.Y.scl[img[a]] & ~img[m.X.closure[a]]:
            return {"A": S(a)}
    return None


def c43_2(inst):
    m = inst.m
    pre = m.table.preimages
    for b in _all_subsets_of(m.cod):
        for u in m.X.gamma_open:
            if pre[b] & ~u:
                continue
            if not any(b & ~v == 0 and pre[v] & ~u == 0 for v in m.Y.semi_open):
                return {"B": S(b), "U": S(u)}
    return None


def c51_2(inst):
    m = inst.m
    pre = m.table.preimages
    x = m.X
    for b in _all_subsets_of(m.cod):
        if x.interior[x.closure[pre[b]]] & ~pre[m.Y.closure[b]]:
            return {"B": S(b)}
    return None


def c51_3(inst):
    m = inst.m
    img = m.table.images
    x = m.X
    for a in _all_subsets_of(m.dom):
        if img[x.interior[x.closure[a]]] & ~m.Y.closure[img[a]]:
            return {"A": S(a)}
    return None


def c55_2(inst):
    m = inst.m
    pre = m.table.preimages
    for a in _all_subsets_of(m.cod):
        if m.X.scl[pre[a]] & ~pre[m.Y.closure[a]]:
            return {"A": S(a)}
    return None


def c56_2(inst):
    m = inst.m
    img = m.table.images
    for a in _all_subsets_of(m.dom):
        if img[m.X.sd[a]] & ~m.Y.closure[img[a]]:
            return {"A": S(a)}
    return None


def c57_2(inst):
    m = inst.m
    img = m.table.images
    for x in range(m.dom.n):
        for b in m.Y.gamma_open:
            if not b >> m.f[x] & 1:
                continue
            if not any(a >> x & 1 and img[a] & ~b == 0 for a in m.X.semi_open):
                return {"x": x, "B": S(b)}
    return None


def c58(inst):
    m = inst.m
    img = m.table.images
    for a in _all_subsets_of(m.dom):
        if img[m.X.sd[a]] & ~m.Y.derived[img[a]]:
            return {"A": S(a)}
    return None


def c510_2(inst):
    m = inst.m
    pre = m.table.preimages
    for b in _all_subsets_of(m.cod):
        if pre[m.Y.interior[b]] & ~m.X.sint[pre[b]]:
            return {"B": S(b)}
    return None


def implies(premise: Callable, conclusion: Callable, tag: str) -> Callable:
    """Claim that ``premise`` implies ``conclusion``; both are conditions (None = holds)."""

    def claim(inst):
        if premise(inst) is not None:
            return None
        w = conclusion(inst)
        if w is None:
            return None
        return {"violates": tag, **w}

    return claim


def all_of(*conds: Callable) -> Callable:
    def cond(inst):
        for c in conds:
            w = c(inst)
            if w is not None:
                return w
        return None

    return cond


# -- triple claims -----------------------------------------------------------------


def _on(attr: str, cond: Callable) -> Callable:
    """Evaluate a map condition on one of the triple's maps."""

    class _View:
        __slots__ = ("m", "cfg")

    def wrapped(inst):
        view = _View()
        view.m = getattr(inst, attr)
        view.cfg = inst.cfg
        return cond(view)

    return wrapped


def _transported(m: M.PointMap, dom_kind: str, cod_kind: str) -> M.PointMap:
    return M.PointMap(builtin(m.dom, dom_kind), builtin(m.cod, cod_kind), m.f, m.closed_def)


def _g_gamma_semi_open(inst):
    k = inst.f.gamma.kind
    return _wrap("U", M.semi_open_map_witness(_transported(inst.g, k, k)))


def _g_beta_semi_closed(inst):
    g = inst.g
    t = M.PointMap(g.gamma, builtin(g.cod, g.gamma.kind), g.f, g.closed_def)
    return _wrap("F", M.semi_closed_map_witness(t))


# -- registry ----------------------------------------------------------------------


def _hyps(*names: str) -> tuple[Hyp, ...]:
    out = []
    for n in names:
        name, _, target = n.partition("@")
        out.append(Hyp(name, target or "all"))
    return tuple(out)


def _equivalence(base, statement, shape, hyps, conds, pairs, uses_subspace=False):
    specs = []
    for i, j in pairs:
        specs.append(
            TheoremSpec(
                f"{base}:{i}-{j}",
                f"{statement} [({i}) implies ({j})]",
                shape,
                hyps,
                implies(conds[i], conds[j], f"({i})=>({j})"),
                uses_subspace=uses_subspace,
            )
        )
    return specs


STAR = ((1, 2), (2, 1), (1, 3), (3, 1))
BOTH = ((1, 2), (2, 1))


def _build_registry() -> list[TheoremSpec]:
    R: list[TheoremSpec] = []
    none = ()

    R.append(TheoremSpec("L2.2:1-2", "x in scl(A) implies every semi-nbd of x meets A", "space", none,
                         _pointwise(_l22_in_scl, _l22_nbds_meet, "(1)=>(2)")))
    R.append(TheoremSpec("L2.2:2-1", "every semi-nbd of x meets A implies x in scl(A)", "space", none,
                         _pointwise(_l22_nbds_meet, _l22_in_scl, "(2)=>(1)")))
    R.append(TheoremSpec("P5:1-2", "A semi-closed implies X-A semi-open", "space", none,
                         _per_subset(_is_sc, _compl_so, "(1)=>(2)")))
    R.append(TheoremSpec("P5:2-1", "X-A semi-open implies A semi-closed", "space", none,
                         _per_subset(_compl_so, _is_sc, "(2)=>(1)")))
    R.append(TheoremSpec("D10.cl", "cl(A) lies inside every gamma-closed superset of A", "space", none, _d10))
    R.append(TheoremSpec("AUX-L2.3", "U & cl(A) <= cl(U & A) for gamma-open U", "space", none, _aux_l23))

    R.append(TheoremSpec("C3.B", "cl_B(U&B) <= cl(U&B) <= cl(U) & cl(B) for the induced operation", "subspace",
                         _hyps("subspace-gammaB-unambiguous"), _c3b, uses_subspace=True))

    sem_open = {1: c_semi_open, 2: c31_2, 3: c31_3}
    R += _equivalence("T3.1", "semi-open map characterisations", "map",
                      _hyps("op-open", "op-monotone", "op-regular"), sem_open, STAR)
    R += _equivalence("T3.2", "bijective f semi-open iff f^-1(scl(B)) <= cl(f^-1(B))", "map",
                      _hyps("map-bijective", "op-open"), {1: c_semi_open, 2: c32_2}, BOTH)
    R += _equivalence("T3.5", "(gamma,beta)-continuity pointwise iff preimage form", "map",
                      _hyps("op-open@beta"), {1: c_gb_pointwise, 2: c_gb_preimage}, BOTH)
    R += _equivalence("T3.6", "(gamma,beta)-open characterisations", "map",
                      _hyps("op-open@beta"), {1: c_gb_open, 2: c36_2, 3: c36_3}, STAR)
    R.append(TheoremSpec("T3.7", "open and continuous f pulls beta*-semi-open sets back to semi-open sets", "map",
                         _hyps("op-open@beta"), implies(all_of(c_gb_open, c_gb_pointwise), c37, "conclusion")))

    R.append(TheoremSpec("T3.8.1", "g is gamma-semi-open (as printed)", "triple",
                         _hyps("map-injective@g", "map-surjective@f", "op-builtin@gamma"),
                         implies(all_of(_on("gf", c_semi_open), _on("f", c_gb_pointwise)), _g_gamma_semi_open, "conclusion")))
    R.append(TheoremSpec("T3.8.1/corrected", "g sends beta-open sets to alpha*-semi-open sets", "triple",
                         _hyps("map-injective@g", "map-surjective@f"),
                         implies(all_of(_on("gf", c_semi_open), _on("f", c_gb_pointwise)), _on("g", c_semi_open), "conclusion"),
                         variant="corrected"))
    R.append(TheoremSpec("T3.8.2", "f is gamma-semi-open", "triple",
                         _hyps("map-injective@g", "op-open@beta"),
                         implies(all_of(_on("gf", c_semi_open), _on("g", c_gb_open), _on("g", c_gb_pointwise)),
                                 _on("f", c_semi_open), "conclusion")))

    R.append(TheoremSpec("T3.9", "semi-open in a semi-open subspace implies semi-open", "subspace",
                         _hyps("op-regular"), _t39, uses_subspace=True))
    R.append(TheoremSpec("T3.10", "restrictions of a bijective semi-open map are semi-open", "map",
                         _hyps("map-bijective", "op-regular"), implies(c_semi_open, c310, "conclusion"),
                         uses_subspace=True))
    R += _equivalence("T3.11", "bijective f semi-open iff semi-closed G exists", "map",
                      _hyps("map-bijective"), {1: c_semi_open, 2: c311_2}, BOTH)

    R.append(TheoremSpec("L3.12:1-2", "A semi-closed implies int(cl(A)) <= A", "space", none,
                         _per_subset(_is_sc, _intcl_inside, "(1)=>(2)")))
    R.append(TheoremSpec("L3.12:2-1", "int(cl(A)) <= A implies A semi-closed", "space", none,
                         _per_subset(_intcl_inside, _is_sc, "(2)=>(1)")))
    R.append(TheoremSpec("L3.12:1-3", "A semi-closed implies X-A semi-open", "space", none,
                         _per_subset(_is_sc, _compl_so, "(1)=>(3)")))
    R.append(TheoremSpec("L3.12:3-1", "X-A semi-open implies A semi-closed", "space", none,
                         _per_subset(_compl_so, _is_sc, "(3)=>(1)")))

    R.append(TheoremSpec("T3.13", "open and continuous f pulls beta*-semi-closed sets back to semi-closed sets", "map",
                         _hyps("op-open@beta"), implies(all_of(c_gb_open, c_gb_pointwise), c313, "conclusion")))

    R.append(TheoremSpec("T3.14.1", "g is beta-semi-closed (as printed)", "triple",
                         _hyps("map-surjective@f", "map-injective@g", "op-builtin@beta"),
                         implies(all_of(_on("gf", c_semi_closed), _on("f", c_gb_pointwise)), _g_beta_semi_closed, "conclusion")))
    R.append(TheoremSpec("T3.14.1/corrected", "g sends beta-closed sets to alpha*-semi-closed sets", "triple",
                         _hyps("map-surjective@f", "map-injective@g"),
                         implies(all_of(_on("gf", c_semi_closed), _on("f", c_gb_pointwise)), _on("g", c_semi_closed), "conclusion"),
                         variant="corrected"))
    R.append(TheoremSpec("T3.14.2", "f is gamma-semi-closed", "triple",
                         _hyps("map-surjective@f", "map-injective@g", "op-open@beta"),
                         implies(all_of(_on("gf", c_semi_closed), _on("g", c_gb_open), _on("g", c_gb_pointwise)),
                                 _on("f", c_semi_closed), "conclusion")))

    R += _equivalence("T4.1", "semi-closed iff f(cl(A)) contains int(cl(f(A)))", "map",
                      _hyps("op-open", "op-monotone"), {1: c_semi_closed, 2: c41_2}, BOTH)
    R += _equivalence("T4.2", "semi-closed iff scl(f(A)) <= f(cl(A))", "map",
                      _hyps("op-open", "op-monotone"), {1: c_semi_closed, 2: c42_2}, BOTH)
    R += _equivalence("T4.3", "surjective f semi-closed iff semi-open V exists", "map",
                      _hyps("map-surjective", "op-monotone", "op-regular"), {1: c_semi_closed, 2: c43_2}, BOTH)

    R += _equivalence("T5.1", "semi-continuity characterisations", "map",
                      _hyps("op-open"), {1: c_semi_cont, 2: c51_2, 3: c51_3}, STAR)
    R.append(TheoremSpec("R5.3:1-2", "p in sd(A) implies p in scl(A-{p})", "space", none,
                         _pointwise(_sd_has, _scl_minus, "(1)=>(2)", "p")))
    R.append(TheoremSpec("R5.3:2-1", "p in scl(A-{p}) implies p in sd(A)", "space", none,
                         _pointwise(_scl_minus, _sd_has, "(2)=>(1)", "p")))
    R.append(TheoremSpec("T5.4.1", "scl(A) = A | sd(A)", "space", none, _t541))
    R.append(TheoremSpec("T5.4.2", "sd(A | B) = sd(A) | sd(B)", "space", none, _t542))
    R.append(TheoremSpec("T5.4.3", "sd of a union is the union of sd", "space", none, _t543))
    R.append(TheoremSpec("T5.4.4", "sd(sd(A)) <= sd(A)", "space", none, _t544))
    R.append(TheoremSpec("T5.4.5", "scl(sd(A)) = sd(A)", "space", none, _t545))
    R += _equivalence("T5.5", "semi-continuous iff scl(f^-1(A)) <= f^-1(cl(A))", "map",
                      none, {1: c_semi_cont, 2: c55_2}, BOTH)
    R += _equivalence("T5.6", "semi-continuous iff f(sd(A)) <= cl(f(A))", "map",
                      _hyps("op-open"), {1: c_semi_cont, 2: c56_2}, BOTH)
    R += _equivalence("T5.7", "semi-continuous iff pointwise semi-open neighbourhoods exist", "map",
                      _hyps("op-regular"), {1: c_semi_cont, 2: c57_2}, BOTH)
    R.append(TheoremSpec("T5.8", "injective semi-continuous f has f(sd(A)) <= d(f(A))", "map",
                         _hyps("map-injective", "op-regular"), implies(c_semi_cont, c58, "conclusion")))
    R.append(TheoremSpec("T5.9", "f(sd(A)) <= d(f(A)) for all A implies semi-continuous", "map",
                         _hyps("op-open"), implies(c58, c_semi_cont, "conclusion")))
    R += _equivalence("T5.10", "semi-continuous iff f^-1(int(B)) <= sint(f^-1(B))", "map",
                      _hyps("op-regular"), {1: c_semi_cont, 2: c510_2}, BOTH)
    return R


_REGISTRY: list[TheoremSpec] | None = None


def registry() -> list[TheoremSpec]:
    """Every spec, in a fixed order."""
    global _REGISTRY
    if _REGISTRY is None:
        specs = _build_registry()
        ids = [s.id for s in specs]
        if len(set(ids)) != len(ids):
            raise RuntimeError("duplicate theorem ids")
        _REGISTRY = specs
    return list(_REGISTRY)


def get_spec(theorem_id: str) -> TheoremSpec:
    for s in registry():
        if s.id == theorem_id:
            return s
    raise KeyError(theorem_id)


def select(pattern: str) -> list[TheoremSpec]:
    """Specs matching an exact id, a theorem prefix (``T3.1`` selects ``T3.1:*``), or ``all``."""
    specs = registry()
    if pattern == "all":
        return specs
    out = []
    for s in specs:
        if s.id == pattern or any(s.id.startswith(pattern + sep) for sep in (":", ".", "/")):
            out.append(s)
    if not out:
        raise KeyError(pattern)
    return out
