"""Line-oriented text format for spaces, operations and maps.

::

    # Sierpinski space with the closure operation
    space S { points = 2  open = {} open = {0} open = {0 1} }
    operation C on S { kind = closure }
    operation H on S { map {} -> {} map {0} -> {0 1} map {0 1} -> {0 1} }
    map swap : S -> S { 0 -> 1  1 -> 0 ; gamma = C ; beta = C }
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import GammaTopError, ParseError, PointOutOfRange, UnknownReference
from .maps import PointMap
from .operation import Operation, builtin, make_operation, normalize_kind
from .space import FiniteSpace, mask_of, points_of, validate_topology

_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<arrow>->)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_.\-]*)|(?P<sym>[{}=;:,])")


class IncompleteMap(GammaTopError, ValueError):
    pass


@dataclass
class OperationDecl:
    space: str
    op: Operation
    builtin_kind: bool


@dataclass
class MapDecl:
    dom: str
    cod: str
    f: tuple[int, ...]
    gamma: str | None = None
    beta: str | None = None


@dataclass
class Document:
    spaces: dict[str, FiniteSpace] = field(default_factory=dict)
    operations: dict[str, OperationDecl] = field(default_factory=dict)
    maps: dict[str, MapDecl] = field(default_factory=dict)
    order: list[tuple[str, str]] = field(default_factory=list)

    def space(self, name: str) -> FiniteSpace:
        try:
            return self.spaces[name]
        except KeyError:
            raise UnknownReference(f"no space named {name!r}") from None

    def operation(self, name: str) -> Operation:
        try:
            return self.operations[name].op
        except KeyError:
            raise UnknownReference(f"no operation named {name!r}") from None

    def point_map(self, name: str, closed_def: str = "complement") -> PointMap:
        try:
            decl = self.maps[name]
        except KeyError:
            raise UnknownReference(f"no map named {name!r}") from None
        gamma = self.operation(decl.gamma) if decl.gamma else builtin(self.space(decl.dom), "identity")
        beta = self.operation(decl.beta) if decl.beta else builtin(self.space(decl.cod), "identity")
        return PointMap(gamma, beta, decl.f, closed_def)


class _Tokens:
    def __init__(self, text: str):
        self.items: list[tuple[str, str, int, int]] = []
        line, line_start = 1, 0
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
            kind = m.lastgroup
            if kind is not None:
                self.items.append((kind, m.group(), line, pos - line_start + 1))
            chunk = m.group()
            if "\n" in chunk:
                line += chunk.count("\n")
                line_start = pos + chunk.rindex("\n") + 1
            pos = m.end()
        self.items.append(("eof", "", line, pos - line_start + 1))
        self.i = 0

    def peek(self) -> tuple[str, str, int, int]:
        return self.items[self.i]

    def next(self) -> tuple[str, str, int, int]:
        tok = self.items[self.i]
        if tok[0] != "eof":
            self.i += 1
        return tok

    def error(self, message: str, tok=None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok[2], tok[3])

    def expect(self, value: str) -> None:
        tok = self.next()
        if tok[1] != value or tok[0] == "eof":
            raise self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)

    def name(self) -> str:
        tok = self.next()
        if tok[0] != "name":
            raise self.error(f"expected a name, found {tok[1] or 'end of input'!r}", tok)
        return tok[1]

    def integer(self) -> int:
        tok = self.next()
        if tok[0] != "int":
            raise self.error(f"expected an integer, found {tok[1] or 'end of input'!r}", tok)
        return int(tok[1])

    def point_set(self) -> list[int]:
        self.expect("{")
        out = []
        while True:
            tok = self.peek()
            if tok[1] == "}":
                self.next()
                return out
            if tok[1] == ",":
                self.next()
                continue
            out.append(self.integer())

    def skip_semis(self) -> None:
        while self.peek()[1] == ";":
            self.next()


def _mask(points: list[int], n: int, where: str) -> int:
    for p in points:
        if p >= n:
            raise PointOutOfRange(f"{where}: point {p} outside 0..{n - 1}")
    return mask_of(points)


def parse_document(text: str) -> Document:
    """Parse and validate a document; raises ParseError or the semantic error."""
    toks = _Tokens(text)
    doc = Document()
    while toks.peek()[0] != "eof":
        tok = toks.next()
        if tok[1] == "space":
            _parse_space(toks, doc, tok)
        elif tok[1] == "operation":
            _parse_operation(toks, doc, tok)
        elif tok[1] == "map":
            _parse_map(toks, doc, tok)
        elif tok[1] == ";":
            continue
        else:
            raise toks.error(f"expected 'space', 'operation' or 'map', found {tok[1]!r}", tok)
    return doc


def _declare(toks: _Tokens, doc: Document, kind: str, name_tok) -> str:
    name = name_tok[1]
    if (kind, name) in doc.order:
        raise toks.error(f"duplicate {kind} {name!r}", name_tok)
    doc.order.append((kind, name))
    return name


def _parse_space(toks: _Tokens, doc: Document, head) -> None:
    name_tok = toks.peek()
    toks.name()
    toks.expect("{")
    n = None
    opens: list[list[int]] = []
    while True:
        toks.skip_semis()
        tok = toks.next()
        if tok[1] == "}":
            break
        if tok[1] == "points":
            toks.expect("=")
            n = toks.integer()
        elif tok[1] == "open":
            toks.expect("=")
            opens.append(toks.point_set())
        else:
            raise toks.error(f"expected 'points', 'open' or '}}', found {tok[1] or 'end of input'!r}", tok)
    if n is None or n < 1:
        raise ParseError("space needs 'points = <n>' with n >= 1", head[2], head[3])
    name = _declare(toks, doc, "space", name_tok)
    masks = [_mask(o, n, f"space {name}") for o in opens]
    doc.spaces[name] = validate_topology(n, masks)


def _parse_operation(toks: _Tokens, doc: Document, head) -> None:
    name_tok = toks.peek()
    toks.name()
    toks.expect("on")
    space_name = toks.name()
    space = doc.space(space_name)
    toks.expect("{")
    kind = None
    table: dict[int, int] = {}
    while True:
        toks.skip_semis()
        tok = toks.next()
        if tok[1] == "}":
            break
        if tok[1] == "kind":
            toks.expect("=")
            kind_tok = toks.peek()
            try:
                kind = normalize_kind(toks.name())
            except ValueError as exc:
                raise toks.error(str(exc), kind_tok) from None
        elif tok[1] == "map":
            src = _mask(toks.point_set(), space.n, f"operation {name_tok[1]}")
            toks.expect("->")
            dst = _mask(toks.point_set(), space.n, f"operation {name_tok[1]}")
            if src in table:
                raise toks.error("open set listed twice", tok)
            table[src] = dst
        else:
            raise toks.error(f"expected 'kind', 'map' or '}}', found {tok[1] or 'end of input'!r}", tok)
    if kind is not None and table:
        raise ParseError("an operation takes either 'kind' or 'map' entries, not both", head[2], head[3])
    name = _declare(toks, doc, "operation", name_tok)
    if kind is not None:
        doc.operations[name] = OperationDecl(space_name, builtin(space, kind), True)
    else:
        doc.operations[name] = OperationDecl(space_name, make_operation(space, table), False)


def _parse_map(toks: _Tokens, doc: Document, head) -> None:
    name_tok = toks.peek()
    toks.name()
    toks.expect(":")
    dom_name = toks.name()
    toks.expect("->")
    cod_name = toks.name()
    dom, cod = doc.space(dom_name), doc.space(cod_name)
    toks.expect("{")
    images: dict[int, int] = {}
    refs: dict[str, str] = {}
    while True:
        toks.skip_semis()
        tok = toks.peek()
        if tok[1] == "}":
            toks.next()
            break
        if tok[1] in ("gamma", "beta"):
            toks.next()
            toks.expect("=")
            refs[tok[1]] = toks.name()
            continue
        x = toks.integer()
        toks.expect("->")
        y = toks.integer()
        if x >= dom.n:
            raise PointOutOfRange(f"map {name_tok[1]}: point {x} outside domain 0..{dom.n - 1}")
        if y >= cod.n:
            raise PointOutOfRange(f"map {name_tok[1]}: image {y} outside codomain 0..{cod.n - 1}")
        if x in images:
            raise toks.error(f"point {x} mapped twice", tok)
        images[x] = y
    missing = [x for x in range(dom.n) if x not in images]
    if missing:
        raise IncompleteMap(f"map {name_tok[1]}: no image for point {missing[0]}")
    for side, space_name in (("gamma", dom_name), ("beta", cod_name)):
        ref = refs.get(side)
        if ref is not None:
            decl = doc.operations.get(ref)
            if decl is None:
                raise UnknownReference(f"no operation named {ref!r}")
            if decl.space != space_name:
                raise UnknownReference(f"operation {ref!r} is on space {decl.space!r}, not {space_name!r}")
    name = _declare(toks, doc, "map", name_tok)
    doc.maps[name] = MapDecl(dom_name, cod_name, tuple(images[x] for x in range(dom.n)), refs.get("gamma"), refs.get("beta"))


def render_set(mask: int) -> str:
    return "{" + " ".join(map(str, points_of(mask))) + "}"


def render_document(doc: Document) -> str:
    """Canonical text: opens ascending by encoding, points ascending."""
    out: list[str] = []
    for kind, name in doc.order:
        if kind == "space":
            s = doc.spaces[name]
            out.append(f"space {name} {{")
            out.append(f"  points = {s.n}")
            out.extend(f"  open = {render_set(u)}" for u in s.opens)
            out.append("}")
        elif kind == "operation":
            decl = doc.operations[name]
            out.append(f"operation {name} on {decl.space} {{")
            if decl.builtin_kind:
                out.append(f"  kind = {decl.op.kind}")
            else:
                out.extend(f"  map {render_set(u)} -> {render_set(v)}" for u, v in zip(decl.op.space.opens, decl.op.table))
            out.append("}")
        else:
            decl = doc.maps[name]
            out.append(f"map {name} : {decl.dom} -> {decl.cod} {{")
            out.extend(f"  {x} -> {y}" for x, y in enumerate(decl.f))
            if decl.gamma:
                out.append(f"  gamma = {decl.gamma}")
            if decl.beta:
                out.append(f"  beta = {decl.beta}")
            out.append("}")
    return "\n".join(out) + "\n"


def render_space(space: FiniteSpace, name: str = "S") -> str:
    doc = Document(spaces={name: space}, order=[("space", name)])
    return render_document(doc)
