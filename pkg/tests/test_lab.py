from __future__ import annotations

import random

import pytest

from gammatop.errors import CapExceeded
from gammatop.lab import (
    Grid,
    _run_chunk,
    check_many,
    check_theorem,
    functions_between,
    replay,
    search_counterexample,
    variant_audit,
)
from gammatop.theorems import Config, get_spec, select


def _stream(spec, grid, cfg=Config(), workers=1):
    return [v.to_json() for v in check_theorem(spec, grid, cfg, workers, keep="all").verdicts]


def test_grid_cap():
    with pytest.raises(CapExceeded):
        Grid(max_points=5)
    with pytest.raises(ValueError):
        Grid(ops="sometimes")


def test_verdict_stream_is_repeatable():
    spec = get_spec("T3.1:1-2")
    grid = Grid(max_points=2, ops="random:2:7")
    assert _stream(spec, grid) == _stream(spec, grid)


def test_parallel_run_is_identical():
    specs = select("T5.5") + select("L3.12")
    grid = Grid(max_points=2)
    a = [(r.summary(), [v.to_json() for v in r.verdicts]) for r in check_many(specs, grid, keep="all")]
    b = [(r.summary(), [v.to_json() for v in r.verdicts]) for r in check_many(specs, grid, workers=2, keep="all")]
    assert a == b


def test_counts_do_not_depend_on_chunk_order():
    spec = get_spec("T5.5:1-2")
    grid = Grid(max_points=2)
    n = len(grid.spaces("map"))
    order = list(range(n))
    random.Random(3).shuffle(order)
    parts = [_run_chunk(((spec.id,), (), grid, Config(), "counterexamples", "map", i))[0] for i in order]
    full = check_theorem(spec, grid)
    assert sum(p.counterexample for p in parts) == full.counterexample
    assert sum(p.holds for p in parts) == full.holds
    keys = {tuple(k) for p in parts for k in p.counterexample_keys}
    assert keys == {tuple(k) for k in full.counterexample_keys}


def test_counterexamples_replay():
    rep = check_theorem(get_spec("L3.12:2-1"), Grid(max_points=3))
    assert rep.counterexample == 3
    for v in rep.verdicts:
        witness, hyps = replay(v)
        assert witness == v.witness
        assert all(hyps.values())


def test_search_finds_and_replays():
    res = search_counterexample(get_spec("T5.5:1-2"), (), Grid(max_points=3))
    assert res.status == "counterexample"
    witness, _ = replay(res.verdict)
    assert witness is not None
    again = search_counterexample(get_spec("T5.5:1-2"), (), Grid(max_points=3))
    assert again.to_record() == res.to_record()


def test_search_with_dropped_hypothesis_replays_to_violation():
    grid = Grid(max_points=2, ops="random:4:1")
    res = search_counterexample(get_spec("T3.9"), ["op-regular"], grid)
    assert res.status in ("counterexample", "exhausted")
    if res.verdict is not None:
        witness, hyps = replay(res.verdict, ["op-regular"])
        assert witness is not None and all(hyps.values())
    assert search_counterexample(get_spec("T3.9"), ["op-regular"], grid).to_record() == res.to_record()


def test_search_budget_and_exhaustion():
    res = search_counterexample(get_spec("T5.4.1"), (), Grid(max_points=3))
    assert res.status == "exhausted" and res.evaluated == 102
    res = search_counterexample(get_spec("T5.4.1"), (), Grid(max_points=3), budget=5)
    assert res.status == "budget-exhausted" and res.evaluated == 5
    with pytest.raises(ValueError):
        search_counterexample(get_spec("T5.4.1"), ["op-regular"])


def test_map_sampling_is_seeded():
    grid = Grid(max_points=4)
    spaces = grid.spaces("map")
    big = [s for s in spaces if s.n == 4][0]
    a = functions_between(big, big, "sample:10:5")
    functions_between.cache_clear()
    assert functions_between(big, big, "sample:10:5") == a
    assert len(a) == 10 and len(functions_between(spaces[0], spaces[0], "auto")) == 1


def test_audit_lists_both_variants():
    rows = variant_audit(Grid(max_points=2))
    assert [r[0] for r in rows] == ["T3.8.1", "T3.14.1"]
    for _, stated, corrected in rows:
        assert corrected.theorem.endswith("/corrected")
        assert stated.total > 0 and corrected.total > 0
