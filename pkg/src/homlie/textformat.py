"""Line-oriented text format for algebras, maps, forms and cocycles.

A file is a sequence of blocks::

    algebra <name>
    dim <N>
    basis <label> ...
    dualbasis <label> ...          (optional)
    bracket <l> <r> -> <c> <label> ...   (skew-completed)
    product <l> <r> -> <c> <label> ...   (no completion; not mixed with bracket)
    twist <map name>               (optional, map on this algebra)
    metric <form name>             (optional, form on this algebra)
    endalgebra

    map <name> on <alg>  |  map <name> from <alg> to <alg>
    <label> -> <c> <label> ...
    endmap

    form <name> on <alg>
    <l1> <l2> -> <c>               (symmetric-completed)
    endform

    cocycle <name> from <alg> to <alg>
    <l> <r> -> <c> <label> ...     (skew-completed)
    endcocycle

``#`` starts a comment.  Coefficients are integers or ``p/q``.  Comment
lines before the first block form the file header and survive a
round trip; all other comments are dropped.  ``serialize`` writes the
canonical form: basis order throughout, reduced rationals, zeros
omitted, one entry per line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import LABEL_RE, AlgebraPresentation, Product
from .linalg import zeros

COEFF_RE = re.compile(r"[+-]?\d+(/\d+)?\Z")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass(frozen=True, eq=False)
class MapBlock:
    name: str
    source: str
    target: str
    matrix: np.ndarray

    @property
    def endomorphism(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True, eq=False)
class FormBlock:
    name: str
    algebra: str
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class CocycleBlock:
    """Skew bilinear map from ``source`` x ``source`` into ``target``; tensor[i, j] is a target vector."""

    name: str
    source: str
    target: str
    tensor: np.ndarray


@dataclass
class Document:
    header: list[str] = field(default_factory=list)
    algebras: dict[str, AlgebraPresentation] = field(default_factory=dict)
    maps: dict[str, MapBlock] = field(default_factory=dict)
    forms: dict[str, FormBlock] = field(default_factory=dict)
    cocycles: dict[str, CocycleBlock] = field(default_factory=dict)
    order: list[tuple[str, str]] = field(default_factory=list)

    def _names(self) -> set[str]:
        taken = {n for _, n in self.order}
        for alg in self.algebras.values():
            if alg.twist is not None:
                taken.add(alg.twist_name)
            if alg.form is not None:
                taken.add(alg.form_name)
        return taken

    def _claim(self, kind: str, name: str, *aux: str):
        taken = self._names()
        for n in (name,) + aux:
            if n in taken:
                raise ValueError(f"duplicate block name {n!r}")
        self.order.append((kind, name))

    def add_algebra(self, alg: AlgebraPresentation) -> "Document":
        aux = [alg.twist_name] if alg.twist is not None else []
        aux += [alg.form_name] if alg.form is not None else []
        if len(set(aux + [alg.name])) != len(aux) + 1:
            raise ValueError(f"algebra {alg.name}: twist, metric and algebra names must differ")
        self._claim("algebra", alg.name, *aux)
        self.algebras[alg.name] = alg
        return self

    def add_map(self, name: str, source: str, target: str, matrix) -> "Document":
        self._require_algebra(source)
        self._require_algebra(target)
        m = np.asarray(matrix, dtype=object)
        if m.shape != (self.algebras[target].dim, self.algebras[source].dim):
            raise ValueError(f"map {name}: shape {m.shape} does not match {target} <- {source}")
        self._claim("map", name)
        self.maps[name] = MapBlock(name, source, target, m)
        return self

    def add_form(self, name: str, algebra: str, matrix) -> "Document":
        self._require_algebra(algebra)
        self._claim("form", name)
        self.forms[name] = FormBlock(name, algebra, np.asarray(matrix, dtype=object))
        return self

    def add_cocycle(self, name: str, source: str, target: str, tensor) -> "Document":
        self._require_algebra(source)
        self._require_algebra(target)
        self._claim("cocycle", name)
        self.cocycles[name] = CocycleBlock(name, source, target, np.asarray(tensor, dtype=object))
        return self

    def _require_algebra(self, name: str):
        if name not in self.algebras:
            raise KeyError(f"unknown algebra {name!r}")

    def algebra(self, name: str | None = None) -> AlgebraPresentation:
        """The named algebra, or the only/first one when ``name`` is None."""
        if name is not None:
            self._require_algebra(name)
            return self.algebras[name]
        if not self.algebras:
            raise KeyError("document contains no algebra")
        return next(iter(self.algebras.values()))


# ---------------------------------------------------------------- parsing


@dataclass
class _Token:
    text: str
    col: int


def _tokens(line: str) -> list[_Token]:
    return [_Token(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _coeff(tok: _Token, lineno: int) -> Fraction:
    if not COEFF_RE.match(tok.text):
        raise ParseError(f"expected a coefficient (integer or p/q), got {tok.text!r}", lineno, tok.col)
    try:
        return Fraction(tok.text)
    except ZeroDivisionError:
        raise ParseError("zero denominator", lineno, tok.col) from None


def _name(tok: _Token, lineno: int) -> str:
    if not LABEL_RE.match(tok.text):
        raise ParseError(f"invalid name {tok.text!r}", lineno, tok.col)
    return tok.text


@dataclass
class _RawAlgebra:
    name: str
    line: int
    dim: int | None = None
    basis: list[str] | None = None
    dual: list[str] | None = None
    entries: list = field(default_factory=list)  # (kind, lhs tokens, rhs tokens, lineno)
    twist: tuple[str, int, int] | None = None
    metric: tuple[str, int, int] | None = None


@dataclass
class _RawBlock:
    kind: str
    name: str
    source: str
    target: str
    line: int
    entries: list = field(default_factory=list)  # (lhs tokens, rhs tokens, lineno)


def _split_arrow(toks: list[_Token], lineno: int, col: int):
    idx = [i for i, t in enumerate(toks) if t.text == "->"]
    if len(idx) != 1:
        raise ParseError("expected exactly one '->'", lineno, col)
    return toks[: idx[0]], toks[idx[0] + 1:], toks[idx[0]]


class _Parser:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.header: list[str] = []
        self.raw: list = []

    def run(self) -> Document:
        current = None
        seen_block = False
        for lineno, raw_line in enumerate(self.lines, start=1):
            content = raw_line.split("#", 1)[0]
            if not seen_block and raw_line.strip().startswith("#") and not content.strip():
                self.header.append(raw_line.strip())
                continue
            toks = _tokens(content)
            if not toks:
                continue
            head = toks[0].text
            if current is None:
                current = self._open(toks, lineno)
                seen_block = True
                continue
            if isinstance(current, _RawAlgebra):
                if head == "endalgebra":
                    self._no_extra(toks, lineno)
                    self.raw.append(current)
                    current = None
                else:
                    self._algebra_line(current, toks, lineno)
            else:
                if head == f"end{current.kind}":
                    self._no_extra(toks, lineno)
                    self.raw.append(current)
                    current = None
                else:
                    lhs, rhs, _ = _split_arrow(toks, lineno, toks[0].col)
                    current.entries.append((lhs, rhs, lineno))
        if current is not None:
            kind = "algebra" if isinstance(current, _RawAlgebra) else current.kind
            raise ParseError(f"{kind} {current.name} is not closed", len(self.lines) + 1)
        return self._build()

    @staticmethod
    def _no_extra(toks, lineno):
        if len(toks) > 1:
            raise ParseError(f"unexpected {toks[1].text!r}", lineno, toks[1].col)

    def _open(self, toks: list[_Token], lineno: int):
        head = toks[0].text
        if head == "algebra":
            if len(toks) != 2:
                raise ParseError("expected 'algebra <name>'", lineno, toks[0].col)
            return _RawAlgebra(_name(toks[1], lineno), lineno)
        if head in ("map", "form", "cocycle"):
            texts = [t.text for t in toks]
            if len(toks) == 4 and texts[2] == "on" and head != "cocycle":
                alg = _name(toks[3], lineno)
                return _RawBlock(head, _name(toks[1], lineno), alg, alg, lineno)
            if len(toks) == 6 and texts[2] == "from" and texts[4] == "to" and head != "form":
                return _RawBlock(head, _name(toks[1], lineno), _name(toks[3], lineno), _name(toks[5], lineno), lineno)
            shapes = {"map": "'map <name> on <alg>' or 'map <name> from <alg> to <alg>'",
                      "form": "'form <name> on <alg>'",
                      "cocycle": "'cocycle <name> from <alg> to <alg>'"}
            raise ParseError(f"expected {shapes[head]}", lineno, toks[0].col)
        raise ParseError(f"expected a block header, got {head!r}", lineno, toks[0].col)

    def _algebra_line(self, alg: _RawAlgebra, toks: list[_Token], lineno: int):
        head = toks[0].text
        if head == "dim":
            if len(toks) != 2 or not toks[1].text.isdigit():
                raise ParseError("expected 'dim <N>'", lineno, toks[0].col)
            if alg.dim is not None:
                raise ParseError("dim given twice", lineno, toks[0].col)
            alg.dim = int(toks[1].text)
        elif head in ("basis", "dualbasis"):
            if alg.basis is None and head == "dualbasis":
                raise ParseError("dualbasis before basis", lineno, toks[0].col)
            if (alg.basis if head == "basis" else alg.dual) is not None:
                raise ParseError(f"{head} given twice", lineno, toks[0].col)
            labels = [_name(t, lineno) for t in toks[1:]]
            if head == "basis":
                alg.basis = labels
            else:
                alg.dual = labels
        elif head in ("bracket", "product"):
            if alg.basis is None:
                raise ParseError(f"{head} before basis", lineno, toks[0].col)
            lhs, rhs, arrow = _split_arrow(toks[1:], lineno, toks[0].col)
            if len(lhs) != 2:
                raise ParseError("expected two labels before '->'", lineno, toks[0].col)
            alg.entries.append((head, lhs, rhs, lineno))
        elif head in ("twist", "metric"):
            if len(toks) != 2:
                raise ParseError(f"expected '{head} <name>'", lineno, toks[0].col)
            if getattr(alg, head) is not None:
                raise ParseError(f"{head} given twice", lineno, toks[0].col)
            setattr(alg, head, (_name(toks[1], lineno), lineno, toks[1].col))
        else:
            raise ParseError(f"unknown algebra line {head!r}", lineno, toks[0].col)

    # -- assembly

    def _build(self) -> Document:
        doc = Document(header=list(self.header))
        labels: dict[str, list[str]] = {}
        algebras = [r for r in self.raw if isinstance(r, _RawAlgebra)]
        blocks = [r for r in self.raw if isinstance(r, _RawBlock)]
        names: dict[str, int] = {}
        for r in self.raw:
            if r.name in names:
                raise ParseError(f"duplicate block name {r.name!r} (first at line {names[r.name]})", r.line)
            names[r.name] = r.line
        for a in algebras:
            if a.basis is None:
                raise ParseError(f"algebra {a.name} has no basis line", a.line)
            if a.dim is not None and a.dim != len(a.basis):
                raise ParseError(f"algebra {a.name}: dim {a.dim} but {len(a.basis)} basis labels", a.line)
            if len(set(a.basis)) != len(a.basis):
                raise ParseError(f"algebra {a.name}: repeated basis label", a.line)
            if a.dual is not None and len(a.dual) != len(a.basis):
                raise ParseError(f"algebra {a.name}: dualbasis needs {len(a.basis)} labels", a.line)
            labels[a.name] = a.basis

        def index(alg: str, tok: _Token, lineno: int) -> int:
            try:
                return labels[alg].index(tok.text)
            except ValueError:
                raise ParseError(f"unknown label {tok.text!r} in algebra {alg}", lineno, tok.col) from None

        def known(alg: str, lineno: int):
            if alg not in labels:
                raise ParseError(f"unknown algebra {alg!r}", lineno)

        def vector(alg: str, rhs: list[_Token], lineno: int) -> np.ndarray:
            n = len(labels[alg])
            v = zeros(n)
            if len(rhs) == 1 and rhs[0].text == "0":
                return v
            if not rhs or len(rhs) % 2:
                col = rhs[-1].col if rhs else 1
                raise ParseError("expected '<coeff> <label>' pairs after '->'", lineno, col)
            seen = set()
            for c_tok, l_tok in zip(rhs[::2], rhs[1::2]):
                k = index(alg, l_tok, lineno)
                if k in seen:
                    raise ParseError(f"label {l_tok.text!r} repeated", lineno, l_tok.col)
                seen.add(k)
                v[k] = _coeff(c_tok, lineno)
            return v

        def put(store: dict, key, value, lineno: int, what: str):
            if key in store and not _same(store[key], value):
                raise ParseError(f"conflicting {what} (first given at line {store[key][1]})", lineno)
            store.setdefault(key, (value, lineno))

        # blocks by name, needed to resolve twist/metric references
        by_name = {b.name: b for b in blocks}
        attached = set()
        for a in algebras:
            n = len(a.basis)
            kinds = {e[0] for e in a.entries}
            if len(kinds) > 1:
                raise ParseError(f"algebra {a.name} mixes bracket and product lines", a.line)
            skew = kinds != {"product"}
            store: dict = {}
            for kind, lhs, rhs, lineno in a.entries:
                i, j = index(a.name, lhs[0], lineno), index(a.name, lhs[1], lineno)
                v = vector(a.name, rhs, lineno)
                if skew and i == j and any(x != 0 for x in v):
                    raise ParseError("a bracket of a label with itself must vanish", lineno, lhs[0].col)
                put(store, (i, j), v, lineno, "bracket entry")
                if skew:
                    put(store, (j, i), -v, lineno, "bracket entry")
            c = zeros(n, n, n)
            for (i, j), (v, _) in store.items():
                c[i, j] = v
            extra = {}
            for attr, kind in (("twist", "map"), ("metric", "form")):
                ref = getattr(a, attr)
                if ref is None:
                    continue
                ref_name, lineno, col = ref
                b = by_name.get(ref_name)
                if b is None or b.kind != kind or b.source != a.name or b.target != a.name:
                    raise ParseError(f"{attr} {ref_name!r} must name a {kind} on {a.name}", lineno, col)
                attached.add(ref_name)
                extra[attr] = (ref_name, b)
            pres_kwargs = {}
            if "twist" in extra:
                pres_kwargs["twist"] = self._map_matrix(extra["twist"][1], labels, index, vector, put)
                pres_kwargs["twist_name"] = extra["twist"][0]
            if "metric" in extra:
                pres_kwargs["form"] = self._form_matrix(extra["metric"][1], labels, index, put)
                pres_kwargs["form_name"] = extra["metric"][0]
            try:
                pres = AlgebraPresentation(a.name, tuple(a.basis), Product(c, skew=skew),
                                           dual_labels=tuple(a.dual) if a.dual else None, **pres_kwargs)
            except ValueError as exc:
                raise ParseError(str(exc), a.line) from None
            doc.algebras[a.name] = pres
            doc.order.append(("algebra", a.name))

        for b in blocks:
            known(b.source, b.line)
            known(b.target, b.line)
            if b.name in attached:
                continue
            if b.kind == "map":
                doc.maps[b.name] = MapBlock(b.name, b.source, b.target,
                                            self._map_matrix(b, labels, index, vector, put))
            elif b.kind == "form":
                doc.forms[b.name] = FormBlock(b.name, b.source, self._form_matrix(b, labels, index, put))
            else:
                doc.cocycles[b.name] = CocycleBlock(b.name, b.source, b.target,
                                                    self._cocycle_tensor(b, labels, index, vector, put))
            doc.order.append((b.kind, b.name))
        return doc

    @staticmethod
    def _map_matrix(b: _RawBlock, labels, index, vector, put) -> np.ndarray:
        if b.source not in labels or b.target not in labels:
            raise ParseError(f"map {b.name}: unknown algebra", b.line)
        m = zeros(len(labels[b.target]), len(labels[b.source]))
        store: dict = {}
        for lhs, rhs, lineno in b.entries:
            if len(lhs) != 1:
                raise ParseError("expected one label before '->'", lineno, lhs[0].col if lhs else 1)
            i = index(b.source, lhs[0], lineno)
            put(store, i, vector(b.target, rhs, lineno), lineno, "map entry")
        for i, (v, _) in store.items():
            m[:, i] = v
        return m

    @staticmethod
    def _form_matrix(b: _RawBlock, labels, index, put) -> np.ndarray:
        n = len(labels[b.source])
        m = zeros(n, n)
        store: dict = {}
        for lhs, rhs, lineno in b.entries:
            if len(lhs) != 2:
                raise ParseError("expected two labels before '->'", lineno, lhs[0].col if lhs else 1)
            if len(rhs) != 1:
                raise ParseError("expected a single coefficient after '->'", lineno, rhs[1].col if rhs else 1)
            i, j = index(b.source, lhs[0], lineno), index(b.source, lhs[1], lineno)
            x = _coeff(rhs[0], lineno)
            put(store, (i, j), x, lineno, "form entry")
            put(store, (j, i), x, lineno, "form entry")
        for (i, j), (x, _) in store.items():
            m[i, j] = x
        return m

    @staticmethod
    def _cocycle_tensor(b: _RawBlock, labels, index, vector, put) -> np.ndarray:
        n, m = len(labels[b.source]), len(labels[b.target])
        t = zeros(n, n, m)
        store: dict = {}
        for lhs, rhs, lineno in b.entries:
            if len(lhs) != 2:
                raise ParseError("expected two labels before '->'", lineno, lhs[0].col if lhs else 1)
            i, j = index(b.source, lhs[0], lineno), index(b.source, lhs[1], lineno)
            v = vector(b.target, rhs, lineno)
            if i == j and any(x != 0 for x in v):
                raise ParseError("a cocycle on a label with itself must vanish", lineno, lhs[0].col)
            put(store, (i, j), v, lineno, "cocycle entry")
            put(store, (j, i), -v, lineno, "cocycle entry")
        for (i, j), (v, _) in store.items():
            t[i, j] = v
        return t


def _same(stored, value) -> bool:
    old = stored[0]
    if isinstance(old, np.ndarray):
        return bool(np.all(old == value))
    return old == value


def parse(text: str) -> Document:
    return _Parser(text).run()


def parse_file(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# ---------------------------------------------------------------- serialization


def _terms(v, labels) -> str:
    parts = [f"{x} {labels[k]}" for k, x in enumerate(v) if x != 0]
    return " ".join(parts)


def _algebra_lines(a: AlgebraPresentation) -> list[str]:
    out = [f"algebra {a.name}", f"dim {a.dim}", "basis " + " ".join(a.labels)]
    if a.dual_labels is not None:
        out.append("dualbasis " + " ".join(a.dual_labels))
    kw = "bracket" if a.product.skew else "product"
    n = a.dim
    for i in range(n):
        for j in range(i + 1 if a.product.skew else 0, n):
            v = a.product.c[i, j]
            if any(x != 0 for x in v):
                out.append(f"{kw} {a.labels[i]} {a.labels[j]} -> {_terms(v, a.labels)}")
    if a.twist is not None:
        out.append(f"twist {a.twist_name}")
    if a.form is not None:
        out.append(f"metric {a.form_name}")
    out.append("endalgebra")
    if a.twist is not None:
        out += [""] + _map_lines(a.twist_name, f"on {a.name}", a.twist, a.labels, a.labels)
    if a.form is not None:
        out += [""] + _form_lines(a.form_name, a.name, a.form, a.labels)
    return out


def _map_lines(name, where, m, src_labels, dst_labels) -> list[str]:
    out = [f"map {name} {where}"]
    for i, lab in enumerate(src_labels):
        col = m[:, i]
        if any(x != 0 for x in col):
            out.append(f"{lab} -> {_terms(col, dst_labels)}")
    out.append("endmap")
    return out


def _form_lines(name, alg, m, labels) -> list[str]:
    out = [f"form {name} on {alg}"]
    n = len(labels)
    for i in range(n):
        for j in range(i, n):
            if m[i, j] != 0:
                out.append(f"{labels[i]} {labels[j]} -> {m[i, j]}")
    out.append("endform")
    return out


def _cocycle_lines(cb: CocycleBlock, src_labels, dst_labels) -> list[str]:
    out = [f"cocycle {cb.name} from {cb.source} to {cb.target}"]
    n = len(src_labels)
    for i in range(n):
        for j in range(i + 1, n):
            v = cb.tensor[i, j]
            if any(x != 0 for x in v):
                out.append(f"{src_labels[i]} {src_labels[j]} -> {_terms(v, dst_labels)}")
    out.append("endcocycle")
    return out


def serialize(doc: Document) -> str:
    chunks: list[list[str]] = []
    if doc.header:
        chunks.append(list(doc.header))
    for kind, name in doc.order:
        if kind == "algebra":
            chunks.append(_algebra_lines(doc.algebras[name]))
        elif kind == "map":
            mb = doc.maps[name]
            where = f"on {mb.source}" if mb.endomorphism else f"from {mb.source} to {mb.target}"
            chunks.append(_map_lines(name, where, mb.matrix, doc.algebras[mb.source].labels,
                                     doc.algebras[mb.target].labels))
        elif kind == "form":
            fb = doc.forms[name]
            chunks.append(_form_lines(name, fb.algebra, fb.matrix, doc.algebras[fb.algebra].labels))
        else:
            cb = doc.cocycles[name]
            chunks.append(_cocycle_lines(cb, doc.algebras[cb.source].labels, doc.algebras[cb.target].labels))
    return "\n\n".join("\n".join(c) for c in chunks) + "\n"


def document_of(*algebras: AlgebraPresentation, header=()) -> Document:
    doc = Document(header=list(header))
    for a in algebras:
        doc.add_algebra(a)
    return doc
