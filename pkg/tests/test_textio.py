from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from bridge import SPACES_3
from gammatop.errors import IncompleteOperationTable, ParseError, PointOutOfRange, TopologyError, UnknownReference
from gammatop.operation import builtin, random_operation
from gammatop.space import sierpinski
from gammatop.textio import Document, MapDecl, OperationDecl, IncompleteMap, parse_document, render_document

DOC = """
# Sierpinski space with two operations
space S { points = 2  open = {} open = {0} open = {0 1} }
operation C on S { kind = closure }
operation H on S { map {} -> {} map {0} -> {0 1} ; map {0, 1} -> {0 1} }
map swap : S -> S { 0 -> 1  1 -> 0 ; gamma = C ; beta = H }
"""


def test_sierpinski_transcription():
    doc = parse_document("space S { points = 2  open = {} open = {0} open = {0 1} }")
    assert doc.spaces["S"] == sierpinski()


def test_full_document():
    doc = parse_document(DOC)
    assert doc.operation("C").table == (0, 3, 3)
    assert doc.operation("H").table == (0, 3, 3)
    m = doc.point_map("swap")
    assert m.f == (1, 0) and m.gamma.kind == "closure"
    assert [k for k, _ in doc.order] == ["space", "operation", "operation", "map"]


def test_incomplete_table():
    with pytest.raises(IncompleteOperationTable):
        parse_document("space S { points = 2 open = {} open = {0} open = {0 1} } operation G on S { map {} -> {} }")


def test_point_out_of_range():
    with pytest.raises(PointOutOfRange):
        parse_document("space S { points = 2 open = {} open = {0 1} } map m : S -> S { 0 -> 5 1 -> 0 }")
    with pytest.raises(PointOutOfRange):
        parse_document("space S { points = 2 open = {} open = {0 3} }")


def test_unknown_references():
    with pytest.raises(UnknownReference):
        parse_document("operation G on T { kind = identity }")
    with pytest.raises(UnknownReference):
        parse_document("space S { points = 1 open = {} open = {0} } map m : S -> S { 0 -> 0 ; gamma = G }")
    with pytest.raises(UnknownReference):
        parse_document(DOC).point_map("nope")


def test_positioned_syntax_errors():
    with pytest.raises(ParseError) as info:
        parse_document("space S {\n  points = 2\n  opne = {}\n}")
    assert (info.value.line, info.value.column) == (3, 3)
    with pytest.raises(ParseError) as info:
        parse_document("space S { points = 2 open = {0 1 }")
    assert info.value.line == 1
    with pytest.raises(ParseError):
        parse_document("space S { points = 1 open = {} open = {0} } space S { points = 1 open = {} open = {0} }")
    with pytest.raises(ParseError):
        parse_document("space S { points = 1 open = {} open = {0} } operation G on S { kind = fuzzy }")
    with pytest.raises(ParseError):
        parse_document("space S ! { }")


def test_semantic_errors():
    with pytest.raises(TopologyError):
        parse_document("space S { points = 2 open = {} open = {0} open = {1} }")
    with pytest.raises(IncompleteMap):
        parse_document("space S { points = 2 open = {} open = {0 1} } map m : S -> S { 0 -> 1 }")


def test_render_is_canonical():
    text = render_document(parse_document(DOC))
    assert "open = {0 1}" in text
    assert parse_document(text).order == parse_document(DOC).order
    assert render_document(parse_document(text)) == text


@st.composite
def documents(draw):
    doc = Document()
    spaces = draw(st.lists(st.sampled_from(SPACES_3), min_size=1, max_size=3))
    for i, sp in enumerate(spaces):
        doc.spaces[f"X{i}"] = sp
        doc.order.append(("space", f"X{i}"))
    for i in range(draw(st.integers(0, 3))):
        k = draw(st.integers(0, len(spaces) - 1))
        sp = spaces[k]
        if draw(st.booleans()):
            op, flag = builtin(sp, draw(st.sampled_from(["identity", "closure", "intcl"]))), True
        else:
            op, flag = random_operation(sp, random.Random(draw(st.integers(0, 99)))), False
        doc.operations[f"g{i}"] = OperationDecl(f"X{k}", op, flag)
        doc.order.append(("operation", f"g{i}"))
    for i in range(draw(st.integers(0, 2))):
        a, b = draw(st.integers(0, len(spaces) - 1)), draw(st.integers(0, len(spaces) - 1))
        f = tuple(draw(st.integers(0, spaces[b].n - 1)) for _ in range(spaces[a].n))
        gam = [n for n, d in doc.operations.items() if d.space == f"X{a}"]
        bet = [n for n, d in doc.operations.items() if d.space == f"X{b}"]
        doc.maps[f"m{i}"] = MapDecl(f"X{a}", f"X{b}", f, gam[0] if gam else None, bet[0] if bet else None)
        doc.order.append(("map", f"m{i}"))
    return doc


@given(documents())
def test_round_trip(doc):
    text = render_document(doc)
    parsed = parse_document(text)
    assert render_document(parsed) == text
    assert parsed.spaces == doc.spaces
    assert {k: v.op for k, v in parsed.operations.items()} == {k: v.op for k, v in doc.operations.items()}
    assert parsed.maps == doc.maps
