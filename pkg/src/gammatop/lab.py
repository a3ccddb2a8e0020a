"""Sweeps the theorem registry over grids of finite instances.

The instance grid is cut into chunks by the index of the first space in the
instance. Chunks are independent, so they can run in worker processes; the
results are merged in chunk order, which keeps every report identical to a
single-worker run.
"""

from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import maps as M
from .errors import CapExceeded
from .operation import BUILTIN_KINDS, Operation, all_operations, builtin, random_operation
from .space import FiniteSpace, format_set, mask_of, spaces_up_to, validate_topology
from .theorems import (
    Config,
    Hyp,
    MapInstance,
    S,
    SpaceInstance,
    SubspaceInstance,
    TheoremSpec,
    TripleInstance,
    get_spec,
)

OUTCOMES = ("holds", "counterexample", "hypotheses-not-met")
MAX_GRID_POINTS = 4


# -- grid ----------------------------------------------------------------------


@dataclass(frozen=True)
class Grid:
    """Which instances a check visits.

    ``ops`` is ``builtins``, ``random:K:SEED`` (builtins plus K seeded random
    operations per space) or ``exhaustive``. ``maps`` is ``auto`` (every
    function when both sides have at most 3 points, else a seeded sample of
    64), ``all`` or ``sample:K:SEED``. Triples use one space per homeomorphism
    class unless ``triple_up_to_iso`` is off.
    """

    max_points: int = 3
    ops: str = "builtins"
    maps: str = "auto"
    up_to_iso: bool = False
    triple_up_to_iso: bool = True
    min_points: int = 1

    def __post_init__(self) -> None:
        if not 1 <= self.max_points <= MAX_GRID_POINTS:
            raise CapExceeded(f"theorem grids are capped at {MAX_GRID_POINTS} points, got {self.max_points}")
        parse_op_source(self.ops)
        parse_map_source(self.maps)

    def spaces(self, shape: str) -> tuple[FiniteSpace, ...]:
        iso = self.up_to_iso or (shape == "triple" and self.triple_up_to_iso)
        return tuple(s for s in _spaces(self.max_points, iso) if s.n >= self.min_points)


@lru_cache(maxsize=None)
def _spaces(max_points: int, iso: bool) -> tuple[FiniteSpace, ...]:
    return tuple(spaces_up_to(max_points, iso))


def parse_op_source(text: str) -> tuple[str, int, str]:
    kind, _, rest = text.partition(":")
    if kind in ("builtins", "exhaustive") and not rest:
        return kind, 0, ""
    if kind == "random":
        k, _, seed = rest.partition(":")
        if k.isdigit() and seed:
            return kind, int(k), seed
    raise ValueError(f"bad operation source {text!r} (builtins | random:K:SEED | exhaustive)")


def parse_map_source(text: str) -> tuple[str, int, str]:
    kind, _, rest = text.partition(":")
    if kind in ("auto", "all") and not rest:
        return kind, 0, ""
    if kind == "sample":
        k, _, seed = rest.partition(":")
        if k.isdigit() and seed:
            return kind, int(k), seed
    raise ValueError(f"bad map source {text!r} (auto | all | sample:K:SEED)")


@lru_cache(maxsize=4096)
def operations_for(space: FiniteSpace, source: str) -> tuple[tuple[str, Operation], ...]:
    """Labelled operations on one space; builtins always come first."""
    kind, k, seed = parse_op_source(source)
    if kind == "exhaustive":
        return tuple((f"op{i}", op) for i, op in enumerate(all_operations(space)))
    out = [(name, builtin(space, name)) for name in BUILTIN_KINDS]
    for i in range(k):
        rng = random.Random(f"{seed}|{space.n}|{space.opens}|{i}")
        out.append((f"random{i}", random_operation(space, rng)))
    return tuple(out)


@lru_cache(maxsize=4096)
def functions_between(dom: FiniteSpace, cod: FiniteSpace, source: str) -> tuple[tuple[int, ...], ...]:
    kind, k, seed = parse_map_source(source)
    if kind == "auto":
        if dom.n <= 3 and cod.n <= 3:
            kind = "all"
        else:
            kind, k, seed = "sample", 64, "0"
    if kind == "all":
        return tuple(itertools.product(range(cod.n), repeat=dom.n))
    total = cod.n ** dom.n
    if k >= total:
        return tuple(itertools.product(range(cod.n), repeat=dom.n))
    rng = random.Random(f"{seed}|{dom.n}|{cod.n}")
    picked: dict[tuple[int, ...], None] = {}
    while len(picked) < k:
        picked[tuple(rng.randrange(cod.n) for _ in range(dom.n))] = None
    return tuple(picked)


# -- verdicts and reports --------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    theorem: str
    key: tuple
    instance: str
    outcome: str
    witness: dict | None = None
    recipe: dict | None = None
    config: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        return {
            "theorem": self.theorem,
            "key": list(self.key),
            "instance": self.instance,
            "outcome": self.outcome,
            "witness": self.witness,
            "recipe": self.recipe,
            "config": self.config,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True, separators=(",", ":"))


@dataclass
class Report:
    """Outcome counts for one spec over one grid, plus collected verdicts."""

    theorem: str
    config: dict
    holds: int = 0
    counterexample: int = 0
    skipped: int = 0
    counterexample_keys: list = field(default_factory=list)
    verdicts: list[Verdict] = field(default_factory=list)

    @property
    def first(self) -> Verdict | None:
        for v in self.verdicts:
            if v.outcome == "counterexample":
                return v
        return None

    @property
    def total(self) -> int:
        return self.holds + self.counterexample + self.skipped

    def merge(self, other: "Report") -> None:
        self.holds += other.holds
        self.counterexample += other.counterexample
        self.skipped += other.skipped
        self.counterexample_keys.extend(other.counterexample_keys)
        self.verdicts.extend(other.verdicts)

    def summary(self) -> dict:
        first = self.first
        return {
            "theorem": self.theorem,
            "holds": self.holds,
            "counterexample": self.counterexample,
            "skipped": self.skipped,
            "first_counterexample": first.to_record() if first else None,
            "config": self.config,
        }


# -- instance descriptions ----------------------------------------------------------


def space_record(space: FiniteSpace) -> dict:
    return {"points": space.n, "opens": [S(u) for u in space.opens]}


def op_record(op: Operation) -> dict:
    return {"kind": op.kind, "table": [S(v) for v in op.table]}


def instance_recipe(inst) -> dict:
    """Everything needed to rebuild an instance without the grid."""
    if inst.shape in ("space", "subspace"):
        rec = {"X": space_record(inst.op.space), "gamma": op_record(inst.op)}
        if inst.shape == "subspace":
            rec["B"] = S(inst.b)
        return rec
    if inst.shape == "map":
        m = inst.m
        return {
            "X": space_record(m.dom),
            "Y": space_record(m.cod),
            "gamma": op_record(m.gamma),
            "beta": op_record(m.beta),
            "f": list(m.f),
        }
    f, g = inst.f, inst.g
    return {
        "X": space_record(f.dom),
        "Y": space_record(f.cod),
        "Z": space_record(g.cod),
        "gamma": op_record(f.gamma),
        "beta": op_record(f.beta),
        "alpha": op_record(g.beta),
        "f": list(f.f),
        "g": list(g.f),
    }


def _space_from_record(rec: dict) -> FiniteSpace:
    return validate_topology(rec["points"], [mask_of(u) for u in rec["opens"]])


def _op_from_record(space: FiniteSpace, rec: dict) -> Operation:
    return Operation(space, tuple(mask_of(v) for v in rec["table"]), rec["kind"])


def build_instance(shape: str, recipe: dict, cfg: Config):
    X = _space_from_record(recipe["X"])
    gamma = _op_from_record(X, recipe["gamma"])
    if shape == "space":
        return SpaceInstance(gamma, cfg)
    if shape == "subspace":
        return SubspaceInstance(gamma, mask_of(recipe["B"]), cfg)
    Y = _space_from_record(recipe["Y"])
    beta = _op_from_record(Y, recipe["beta"])
    f = M.PointMap(gamma, beta, tuple(recipe["f"]), cfg.closed_def)
    if shape == "map":
        return MapInstance(f, cfg)
    Z = _space_from_record(recipe["Z"])
    alpha = _op_from_record(Z, recipe["alpha"])
    g = M.PointMap(beta, alpha, tuple(recipe["g"]), cfg.closed_def)
    return TripleInstance(f, g, cfg)


def replay(verdict: Verdict, drop: Iterable[str] = ()) -> tuple[dict | None, dict[str, bool]]:
    """Re-evaluate a stored counterexample from its recipe alone.

    Returns the recomputed claim witness and the truth value of every
    hypothesis still in force.
    """
    spec = get_spec(verdict.theorem)
    cfg = Config(**verdict.config)
    inst = build_instance(spec.shape, verdict.recipe, cfg)
    hyps = spec.effective_hypotheses(cfg, frozenset(drop))
    return spec.claim(inst), {str(h): h.holds(inst) for h in hyps}


# -- chunk evaluation ------------------------------------------------------------------


class _FnView:
    __slots__ = ("tables",)

    def __init__(self, **tables):
        self.tables = tables

    def fns(self, target: str):
        if target in self.tables:
            return [self.tables[target]]
        return list(self.tables.values())


class _Chunk:
    def __init__(self, specs: Sequence[TheoremSpec], drop: frozenset[str], cfg: Config, keep: str):
        self.specs = specs
        self.cfg = cfg
        self.cfg_dict = cfg.as_dict()
        self.keep = keep
        self.map_hyps: list[tuple[Hyp, ...]] = []
        self.other_hyps: list[tuple[Hyp, ...]] = []
        for s in specs:
            hyps = s.effective_hypotheses(cfg, drop)
            self.map_hyps.append(tuple(h for h in hyps if h.name.startswith("map-")))
            self.other_hyps.append(tuple(h for h in hyps if not h.name.startswith("map-")))
        self.reports = [Report(s.id, self.cfg_dict) for s in specs]

    def map_filter(self, view: _FnView) -> list[bool]:
        return [all(h.holds(view) for h in hyps) for hyps in self.map_hyps]

    def skip_bulk(self, k: int, count: int, keys_and_labels: Iterable) -> None:
        rep = self.reports[k]
        rep.skipped += count
        if self.keep == "all":
            for key, label in keys_and_labels:
                rep.verdicts.append(
                    Verdict(self.specs[k].id, key, label, "hypotheses-not-met", {"unmet": [str(h) for h in self.map_hyps[k]]}, None, self.cfg_dict)
                )

    def evaluate(self, inst, key: tuple, label, active: Sequence[int]) -> None:
        for k in active:
            spec = self.specs[k]
            rep = self.reports[k]
            unmet = [h for h in self.other_hyps[k] if not h.holds(inst)]
            if unmet:
                rep.skipped += 1
                if self.keep == "all":
                    rep.verdicts.append(
                        Verdict(spec.id, key, label(), "hypotheses-not-met", {"unmet": [str(h) for h in unmet]}, None, self.cfg_dict)
                    )
                continue
            w = spec.claim(inst)
            if w is None:
                rep.holds += 1
                if self.keep == "all":
                    rep.verdicts.append(Verdict(spec.id, key, label(), "holds", None, None, self.cfg_dict))
            else:
                rep.counterexample += 1
                rep.counterexample_keys.append(key)
                if self.keep in ("all", "counterexamples") or (self.keep == "first" and rep.counterexample == 1):
                    rep.verdicts.append(Verdict(spec.id, key, label(), "counterexample", w, instance_recipe(inst), self.cfg_dict))


def _space_label(tag: str, idx: int, space: FiniteSpace) -> str:
    return f"{tag}#{idx}(n={space.n})"


def _run_space_chunk(ch: _Chunk, grid: Grid, spaces, i: int, shape: str) -> None:
    X = spaces[i]
    active = range(len(ch.specs))
    for oi, (olabel, op) in enumerate(operations_for(X, grid.ops)):
        if shape == "space":
            inst = SpaceInstance(op, ch.cfg)
            ch.evaluate(inst, (i, oi), lambda: f"{_space_label('X', i, X)} gamma={olabel}", active)
        else:
            for b in range(1, 1 << X.n):
                inst = SubspaceInstance(op, b, ch.cfg)
                ch.evaluate(inst, (i, oi, b), lambda: f"{_space_label('X', i, X)} gamma={olabel} B={format_set(b)}", active)


def _run_map_chunk(ch: _Chunk, grid: Grid, spaces, i: int) -> None:
    X = spaces[i]
    ops_x = operations_for(X, grid.ops)
    for j, Y in enumerate(spaces):
        ops_y = operations_for(Y, grid.ops)
        for f in functions_between(X, Y, grid.maps):
            table = M.function_table(X, Y, f)
            ok = ch.map_filter(_FnView(f=table))
            active = [k for k, good in enumerate(ok) if good]

            def labels(f=f, j=j, Y=Y):
                for gi, (gl, _) in enumerate(ops_x):
                    for bi, (bl, _) in enumerate(ops_y):
                        yield (i, j, f, gi, bi), f"{_space_label('X', i, X)} {_space_label('Y', j, Y)} f={f} gamma={gl} beta={bl}"

            for k, good in enumerate(ok):
                if not good:
                    ch.skip_bulk(k, len(ops_x) * len(ops_y), labels())
            if not active:
                continue
            for gi, (gl, g) in enumerate(ops_x):
                for bi, (bl, b) in enumerate(ops_y):
                    inst = MapInstance(M.PointMap(g, b, f, ch.cfg.closed_def), ch.cfg)
                    ch.evaluate(
                        inst,
                        (i, j, f, gi, bi),
                        lambda: f"{_space_label('X', i, X)} {_space_label('Y', j, Y)} f={f} gamma={gl} beta={bl}",
                        active,
                    )


def _run_triple_chunk(ch: _Chunk, grid: Grid, spaces, i: int) -> None:
    X = spaces[i]
    ops_x = operations_for(X, grid.ops)
    for j, Y in enumerate(spaces):
        ops_y = operations_for(Y, grid.ops)
        for k_, Z in enumerate(spaces):
            ops_z = operations_for(Z, grid.ops)
            n_ops = len(ops_x) * len(ops_y) * len(ops_z)
            for f in functions_between(X, Y, grid.maps):
                tf = M.function_table(X, Y, f)
                for g in functions_between(Y, Z, grid.maps):
                    tg = M.function_table(Y, Z, g)
                    ok = ch.map_filter(_FnView(f=tf, g=tg))
                    active = [k for k, good in enumerate(ok) if good]
                    prefix = f"{_space_label('X', i, X)} {_space_label('Y', j, Y)} {_space_label('Z', k_, Z)} f={f} g={g}"

                    def labels(f=f, g=g, j=j, k_=k_, prefix=prefix, ops_y=ops_y, ops_z=ops_z):
                        for a, (al, _) in enumerate(ops_x):
                            for b, (bl, _) in enumerate(ops_y):
                                for c, (cl, _) in enumerate(ops_z):
                                    yield (i, j, k_, f, g, a, b, c), f"{prefix} gamma={al} beta={bl} alpha={cl}"

                    for k, good in enumerate(ok):
                        if not good:
                            ch.skip_bulk(k, n_ops, labels())
                    if not active:
                        continue
                    for a, (al, ga) in enumerate(ops_x):
                        for b, (bl, gb) in enumerate(ops_y):
                            fm = M.PointMap(ga, gb, f, ch.cfg.closed_def)
                            for c, (cl, gc) in enumerate(ops_z):
                                inst = TripleInstance(fm, M.PointMap(gb, gc, g, ch.cfg.closed_def), ch.cfg)
                                ch.evaluate(
                                    inst,
                                    (i, j, k_, f, g, a, b, c),
                                    lambda: f"{prefix} gamma={al} beta={bl} alpha={cl}",
                                    active,
                                )


def _run_chunk(task) -> list[Report]:
    spec_ids, drop, grid, cfg, keep, shape, i = task
    specs = [get_spec(s) for s in spec_ids]
    ch = _Chunk(specs, frozenset(drop), cfg, keep)
    spaces = grid.spaces(shape)
    if shape in ("space", "subspace"):
        _run_space_chunk(ch, grid, spaces, i, shape)
    elif shape == "map":
        _run_map_chunk(ch, grid, spaces, i)
    else:
        _run_triple_chunk(ch, grid, spaces, i)
    return ch.reports


# -- public drivers -----------------------------------------------------------------------


def iter_check(
    specs: Sequence[TheoremSpec],
    grid: Grid = Grid(),
    cfg: Config = Config(),
    workers: int = 1,
    keep: str = "counterexamples",
    drop: Iterable[str] = (),
):
    """Yield ``(spec_ids, chunk_reports)`` per chunk, in canonical order.

    Specs are grouped by shape; groups appear in first-seen order.
    """
    if keep not in ("all", "counterexamples", "first", "none"):
        raise ValueError(f"bad keep mode {keep!r}")
    drop = tuple(sorted(drop))
    by_shape: dict[str, list[TheoremSpec]] = {}
    for s in specs:
        by_shape.setdefault(s.shape, []).append(s)
    for shape, group in by_shape.items():
        ids = tuple(s.id for s in group)
        tasks = [(ids, drop, grid, cfg, keep, shape, i) for i in range(len(grid.spaces(shape)))]
        for chunk_reports in _map_tasks(tasks, workers):
            yield ids, chunk_reports


def check_many(
    specs: Sequence[TheoremSpec],
    grid: Grid = Grid(),
    cfg: Config = Config(),
    workers: int = 1,
    keep: str = "counterexamples",
    drop: Iterable[str] = (),
) -> list[Report]:
    """Check every spec over the grid; one report per spec, in input order.

    ``keep`` selects which verdicts are retained: ``all``, ``counterexamples``,
    ``first`` or ``none``. Counts are always complete.
    """
    reports = {s.id: Report(s.id, cfg.as_dict()) for s in specs}
    for _, chunk_reports in iter_check(specs, grid, cfg, workers, keep, drop):
        for part in chunk_reports:
            reports[part.theorem].merge(part)
    if keep == "first":
        for acc in reports.values():
            acc.verdicts = acc.verdicts[:1]
    return [reports[s.id] for s in specs]


def check_theorem(spec: TheoremSpec, grid: Grid = Grid(), cfg: Config = Config(), workers: int = 1, keep: str = "counterexamples") -> Report:
    return check_many([spec], grid, cfg, workers, keep)[0]


def _map_tasks(tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        for t in tasks:
            yield _run_chunk(t)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_run_chunk, tasks)


@dataclass
class SearchResult:
    theorem: str
    dropped: tuple[str, ...]
    status: str  # counterexample | exhausted | budget-exhausted
    evaluated: int
    skipped: int
    verdict: Verdict | None = None

    def to_record(self) -> dict:
        return {
            "theorem": self.theorem,
            "dropped": list(self.dropped),
            "status": self.status,
            "evaluated": self.evaluated,
            "skipped": self.skipped,
            "verdict": self.verdict.to_record() if self.verdict else None,
        }


def search_counterexample(
    spec: TheoremSpec,
    drop: Iterable[str] = (),
    grid: Grid = Grid(),
    cfg: Config = Config(),
    budget: int | None = None,
) -> SearchResult:
    """Walk the grid in canonical order with some hypotheses switched off.

    Stops at the first counterexample. ``budget`` caps the number of instances
    visited (skipped ones included); running out is reported, not raised.
    """
    drop = tuple(sorted(set(drop)))
    names = {h.name for h in spec.hypotheses} | {str(h) for h in spec.hypotheses}
    unknown = [d for d in drop if d not in names]
    if unknown:
        raise ValueError(f"{spec.id} has no hypothesis {unknown[0]!r}")
    evaluated = skipped = 0
    for i in range(len(grid.spaces(spec.shape))):
        for v in _run_chunk(((spec.id,), drop, grid, cfg, "all", spec.shape, i))[0].verdicts:
            if budget is not None and evaluated + skipped >= budget:
                return SearchResult(spec.id, drop, "budget-exhausted", evaluated, skipped)
            if v.outcome == "hypotheses-not-met":
                skipped += 1
                continue
            evaluated += 1
            if v.outcome == "counterexample":
                return SearchResult(spec.id, drop, "counterexample", evaluated, skipped, v)
    return SearchResult(spec.id, drop, "exhausted", evaluated, skipped)


# -- variant audit -----------------------------------------------------------------------


def variant_audit(grid: Grid = Grid(), cfg: Config = Config(), workers: int = 1) -> list[tuple[str, Report, Report]]:
    """Tallies of each as-stated spec next to its corrected variant."""
    from .theorems import registry

    specs = registry()
    corrected = {s.id.split("/")[0]: s for s in specs if s.variant == "corrected"}
    pairs = [(get_spec(base), spec) for base, spec in corrected.items()]
    flat = [s for pair in pairs for s in pair]
    reports = check_many(flat, grid, cfg, workers, keep="first")
    out = []
    for n, (stated, _) in enumerate(pairs):
        out.append((stated.id, reports[2 * n], reports[2 * n + 1]))
    return out


def render_audit(rows) -> str:
    lines = [f"{'theorem':<10} {'variant':<11} {'holds':>8} {'counterex':>10} {'skipped':>10}"]
    for base, stated, corrected in rows:
        for name, rep in (("as-stated", stated), ("corrected", corrected)):
            lines.append(f"{base:<10} {name:<11} {rep.holds:>8} {rep.counterexample:>10} {rep.skipped:>10}")
    return "\n".join(lines)
