"""Reader for the ``key = value`` text format shared by all input files.

A document is a sequence of assignments separated by newlines or commas.
Values are bare tokens, lists ``[...]`` (or ``(...)``) and maps ``{k: v}``;
``#`` starts a comment.  Scalars use the syntax of ``parse_scalar``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import hermitian as hg
from .errors import MalformedTable, ParseError, QLogicError, ValidationError
from .logic import FiniteLogic
from .scalars import QQ, parse_scalar, quadratic

_STOP = set(",[](){}:#=\n")


@dataclass
class Value:
    data: object
    line: int
    column: int


class _Reader:
    def __init__(self, text: str, source: str):
        self.text, self.source, self.pos = text, source, 0

    def where(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, msg, pos=None):
        line, col = self.where(pos)
        return ParseError(msg, line, col, self.source)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip(self, newlines: bool):
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c == "#":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self.pos += 1
            elif c in " \t\r" or (newlines and c == "\n"):
                self.pos += 1
            else:
                break

    def token(self):
        start = self.pos
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c == "(" and self.pos > start and not self.text[self.pos - 1].isspace():
                # call-like tokens such as Q(rt)
                end = self.text.find(")", self.pos)
                if end < 0 or "\n" in self.text[self.pos:end]:
                    raise self.error("unclosed '('")
                self.pos = end + 1
                continue
            if c in _STOP:
                break
            self.pos += 1
        tok = self.text[start:self.pos].strip()
        if not tok:
            raise self.error("expected a value", start)
        return tok

    def value(self, nested: bool):
        self.skip(nested)
        start = self.pos
        line, col = self.where()
        c = self.peek()
        if c in "[(":
            close = "]" if c == "[" else ")"
            self.pos += 1
            items = []
            while True:
                self.skip(True)
                if self.peek() == close:
                    self.pos += 1
                    break
                items.append(self.value(True))
                self.skip(True)
                if self.peek() == ",":
                    self.pos += 1
                elif self.peek() != close:
                    raise self.error(f"expected ',' or '{close}'")
            return Value(items, line, col)
        if c == "{":
            self.pos += 1
            items = {}
            while True:
                self.skip(True)
                if self.peek() == "}":
                    self.pos += 1
                    break
                kpos = self.pos
                key = self.token()
                self.skip(True)
                if self.peek() != ":":
                    raise self.error("expected ':' after a map key")
                self.pos += 1
                if key in items:
                    raise self.error(f"duplicate key {key!r}", kpos)
                items[key] = self.value(True)
                self.skip(True)
                if self.peek() == ",":
                    self.pos += 1
                elif self.peek() != "}":
                    raise self.error("expected ',' or '}'")
            return Value(items, line, col)
        if c in ("", "\n", ",") or c in "])}":
            raise self.error("expected a value", start)
        return Value(self.token(), line, col)

    def document(self) -> dict:
        out = {}
        while True:
            self.skip(True)
            while self.peek() == ",":
                self.pos += 1
                self.skip(True)
            if self.pos >= len(self.text):
                return out
            kpos = self.pos
            key = self.token()
            self.skip(False)
            if self.peek() != "=":
                raise self.error(f"expected '=' after {key!r}")
            self.pos += 1
            if key in out:
                raise self.error(f"duplicate key {key!r}", kpos)
            out[key] = self.value(False)
            self.skip(False)
            if self.peek() not in ("", "\n", ","):
                raise self.error("unexpected text after value")


def parse_document(text: str, source: str = "<input>") -> dict:
    return _Reader(text, source).document()


def _err(msg, v: Value | None, source):
    if v is None:
        return ParseError(msg, None, None, source)
    return ParseError(msg, v.line, v.column, source)


def _known(doc, keys, source):
    for k, v in doc.items():
        if k not in keys:
            raise _err(f"unknown key {k!r}", v, source)


def _need(doc, key, source):
    if key not in doc:
        raise ParseError(f"missing required key {key!r}", None, None, source)
    return doc[key]


def _scalar(v: Value, field, source):
    if not isinstance(v.data, str):
        raise _err("expected a scalar", v, source)
    try:
        return parse_scalar(v.data, field)
    except (ParseError, ValueError, ZeroDivisionError) as e:
        raise _err(f"bad scalar {v.data!r}: {e}", v, source) from None


def _matrix(v: Value, field, source, rows=None, cols=None):
    if not isinstance(v.data, list) or not all(isinstance(r.data, list) for r in v.data):
        raise _err("expected a list of rows", v, source)
    m = [[_scalar(x, field, source) for x in r.data] for r in v.data]
    if rows is not None and len(m) != rows:
        raise _err(f"expected {rows} rows, found {len(m)}", v, source)
    for r, rv in zip(m, v.data):
        if cols is not None and len(r) != cols:
            raise _err(f"expected {cols} entries per row, found {len(r)}", rv, source)
    return m


def _read(source) -> tuple[str, str]:
    """Text and display name for a path or a built-in corpus name."""
    p = Path(source)
    if p.exists():
        return p.read_text(), str(p)
    name = str(source)
    res = resources.files("qlogic") / "data" / f"{name.replace('-', '_')}.txt"
    if res.is_file():
        return res.read_text(), name
    raise FileNotFoundError(f"no file or built-in example named {source!r}")


def builtin_names() -> list[str]:
    root = resources.files("qlogic") / "data"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".txt"))


# spaces

def parse_field(doc, source):
    v = _need(doc, "field", source)
    kind = v.data if isinstance(v.data, str) else None
    if kind == "Q":
        return QQ
    if kind == "Q(rt)":
        d = _need(doc, "rt2", source)
        try:
            return quadratic(int(d.data))
        except (TypeError, ValueError) as e:
            raise _err(f"bad rt2: {e}", d, source) from None
    raise _err("field must be Q or Q(rt)", v, source)


def parse_space(text: str, source: str = "<space>") -> hg.HermitianSpace:
    doc = parse_document(text, source)
    _known(doc, ('name', 'field', 'rt2', 'dim', 'form'), source)
    field = parse_field(doc, source)
    dv = _need(doc, "dim", source)
    try:
        dim = int(dv.data)
        if dim < 1:
            raise ValueError
    except (TypeError, ValueError):
        raise _err("dim must be a positive integer", dv, source) from None
    form = None
    if "form" in doc:
        form = _matrix(doc["form"], field, source, dim, dim)
    name = doc["name"].data if "name" in doc else None
    try:
        return hg.HermitianSpace(field, dim, form, name=name)
    except QLogicError as e:
        raise ValidationError(str(e), f"{source}: form") from None


def load_space(source) -> hg.HermitianSpace:
    text, name = _read(source)
    return parse_space(text, name)


def parse_vectors(v: Value, space: hg.HermitianSpace, source) -> list[hg.Vector]:
    rows = _matrix(v, space.field, source, cols=space.dim)
    return [space.vector(r) for r in rows]


def parse_atoms(text: str, space: hg.HermitianSpace, source: str = "<atoms>") -> list[hg.Subspace]:
    doc = parse_document(text, source)
    _known(doc, ('name', 'atoms'), source)
    v = _need(doc, "atoms", source)
    out = []
    for vec, raw in zip(parse_vectors(v, space, source), v.data):
        if vec.is_zero():
            raise _err("the zero vector spans no atom", raw, source)
        out.append(space.atom(vec))
    return out


def load_atoms(source, space) -> list[hg.Subspace]:
    text, name = _read(source)
    return parse_atoms(text, space, name)


def parse_vector_text(text: str, space: hg.HermitianSpace) -> hg.Vector:
    """Comma separated scalars, e.g. ``1, 1/2, 0``."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != space.dim:
        raise ParseError(f"expected {space.dim} coordinates, got {len(parts)}", None, None, "--vector")
    return space.vector([parse_scalar(p, space.field) for p in parts])


# logics

def parse_logic(text: str, source: str = "<logic>") -> FiniteLogic:
    doc = parse_document(text, source)
    _known(doc, ('name', 'elements', 'bottom', 'top', 'leq', 'ortho'), source)
    ev = _need(doc, "elements", source)
    if not isinstance(ev.data, list) or not all(isinstance(x.data, str) for x in ev.data):
        raise _err("elements must be a list of labels", ev, source)
    elements = [x.data for x in ev.data]
    known = set(elements)

    def label(v: Value):
        if not isinstance(v.data, str) or v.data not in known:
            raise _err(f"unknown element {v.data!r}", v, source)
        return v.data

    pairs = []
    if "leq" in doc:
        lv = doc["leq"]
        if not isinstance(lv.data, list):
            raise _err("leq must be a list of pairs", lv, source)
        for pv in lv.data:
            if not isinstance(pv.data, list) or len(pv.data) != 2:
                raise _err("each leq entry must be a pair", pv, source)
            pairs.append((label(pv.data[0]), label(pv.data[1])))
    bottom = label(doc["bottom"]) if "bottom" in doc else None
    top = label(doc["top"]) if "top" in doc else None
    if bottom is not None:
        pairs += [(bottom, x) for x in elements]
    if top is not None:
        pairs += [(x, top) for x in elements]
    ov = _need(doc, "ortho", source)
    ortho = {}
    if isinstance(ov.data, dict):
        for k, v in ov.data.items():
            if k not in known:
                raise _err(f"unknown element {k!r}", v, source)
            ortho[k] = label(v)
    elif isinstance(ov.data, list):
        for pv in ov.data:
            if not isinstance(pv.data, list) or len(pv.data) != 2:
                raise _err("each ortho entry must be a pair", pv, source)
            ortho[label(pv.data[0])] = label(pv.data[1])
    else:
        raise _err("ortho must be a map or a list of pairs", ov, source)
    for a, b in list(ortho.items()):
        if b in ortho and ortho[b] != a:
            raise MalformedTable(f"ortho maps {a} -> {b} but {b} -> {ortho[b]}", f"{source}: {b}")
    name = doc["name"].data if "name" in doc else Path(source).stem
    try:
        return FiniteLogic(elements, pairs, ortho, bottom, top, name=name)
    except MalformedTable as e:
        where = source if e.location is None else f"{source}: {e.location}"
        raise MalformedTable(e.detail, where) from None


def load_logic(source) -> FiniteLogic:
    text, name = _read(source)
    return parse_logic(text, name)


# states

def parse_state(text: str, logic, source: str = "<state>"):
    from .states import StateMeasure
    doc = parse_document(text, source)
    _known(doc, ('name', 'values', 'approx', 'tolerance'), source)
    approx = "approx" in doc and str(doc["approx"].data).lower() == "true"
    vv = _need(doc, "values", source)
    if not isinstance(vv.data, dict):
        raise _err("values must be a map", vv, source)
    by_label = {logic.label(x): x for x in logic.elements}
    values = {}
    for k, v in vv.data.items():
        if k not in by_label:
            raise _err(f"unknown element {k!r}", v, source)
        try:
            values[by_label[k]] = float(v.data) if approx else Fraction(v.data)
        except (TypeError, ValueError, ZeroDivisionError):
            raise _err(f"bad value {v.data!r}", v, source) from None
    missing = [lab for lab in by_label if by_label[lab] not in values]
    if missing:
        raise ValidationError("state has no value", f"{source}: {missing[0]}")
    tol = float(doc["tolerance"].data) if "tolerance" in doc else (1e-9 if approx else 0.0)
    name = doc["name"].data if "name" in doc else Path(source).stem
    return StateMeasure(logic, values, name, approx=approx, tolerance=tol)


def load_state(source, logic):
    text, name = _read(source)
    return parse_state(text, logic, name)


# symmetries

def parse_symmetry(text: str, space: hg.HermitianSpace, source: str = "<symmetry>"):
    from .scalars import automorphism
    from .symmetry import LinearSymmetry
    doc = parse_document(text, source)
    _known(doc, ('name', 'matrix', 'automorphism'), source)
    m = _matrix(_need(doc, "matrix", source), space.field, source, space.dim, space.dim)
    tag = doc["automorphism"].data if "automorphism" in doc else "id"
    try:
        g = automorphism(space.field, tag)
    except ValueError as e:
        raise _err(str(e), doc["automorphism"], source) from None
    name = doc["name"].data if "name" in doc else "S"
    try:
        return LinearSymmetry(space, m, g, name=name)
    except QLogicError as e:
        raise ValidationError(str(e), f"{source}: matrix") from None


def load_symmetry(source, space):
    text, name = _read(source)
    return parse_symmetry(text, space, name)


# effects and observables

def parse_effects(text: str, source: str = "<effects>"):
    from .effects import Effect
    doc = parse_document(text, source)
    _known(doc, ('name', 'states', 'effects'), source)
    sv = _need(doc, "states", source)
    n = len(sv.data) if isinstance(sv.data, list) else None
    if n is None:
        try:
            n = int(sv.data)
        except (TypeError, ValueError):
            raise _err("states must be a count or a list of names", sv, source) from None
    ev = _need(doc, "effects", source)
    if not isinstance(ev.data, dict):
        raise _err("effects must be a map", ev, source)
    out = []
    for name, v in ev.data.items():
        if not isinstance(v.data, list) or len(v.data) != n:
            raise _err(f"effect {name} needs {n} values", v, source)
        vals = []
        for x in v.data:
            try:
                q = Fraction(x.data)
            except (TypeError, ValueError, ZeroDivisionError):
                raise _err(f"bad value {x.data!r}", x, source) from None
            if not 0 <= q <= 1:
                raise ValidationError("effect values must lie in [0, 1]", f"{source}: {name}")
            vals.append(q)
        out.append(Effect(tuple(vals), name))
    return out


def load_effects(source):
    text, name = _read(source)
    return parse_effects(text, name)


def parse_observable(text: str, logic, source: str = "<observable>"):
    """``outcomes = {label: element}``; for subspace fragments the element is a list of rows."""
    from .effects import observable_from_partition
    doc = parse_document(text, source)
    _known(doc, ('name', 'outcomes'), source)
    ov = _need(doc, "outcomes", source)
    if not isinstance(ov.data, dict):
        raise _err("outcomes must be a map", ov, source)
    labels, elements = [], []
    space = getattr(logic, "space", None)
    for k, v in ov.data.items():
        if space is not None:
            M = space.subspace(_matrix(v, space.field, source, cols=space.dim))
            if not logic.contains(M):
                raise _err(f"outcome {k} is not an element of the fragment", v, source)
            elements.append(M)
        else:
            if not isinstance(v.data, str) or not logic.contains(v.data):
                raise _err(f"unknown element {v.data!r}", v, source)
            elements.append(v.data)
        labels.append(k)
    return observable_from_partition(logic, elements, labels)
