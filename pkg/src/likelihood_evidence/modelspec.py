"""Reading and writing ``.lmod`` model files.

A model file declares a dense discrete model, one construct per line::

    # forecast probability of rain
    model rain
    param day : Monday Tuesday Wednesday
    outcome : rain not-rain
    row Monday : 0 1
    row Tuesday : 0.07 0.93
    row Wednesday : 13/20 7/20

``#`` starts a comment and blank lines are ignored.  ``param`` lines may
repeat; the parameter space is their Cartesian product in declaration order.
Each ``row`` gives one value per parameter, then one probability per outcome.
Values are bare tokens or double-quoted strings; bare tokens that look like
integers or decimals become numbers.  Probabilities are decimals or exact
rationals ``a/b``.
"""

from __future__ import annotations

import itertools
import math
import re
from collections.abc import Hashable
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .core import (
    NORMALIZATION_TOL,
    DiscreteModel,
    OutcomeSpace,
    ParameterSpace,
    build_model,
)
from .errors import ModelError

WARN_TOL = 1e-12

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_.-]*\Z")
_INT = re.compile(r"[+-]?\d+\Z")
_DECIMAL = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\Z")
_RATIONAL = re.compile(r"(\d+)/(\d+)\Z")
_BARE_SAFE = re.compile(r'[^\s#:"]+\Z')


@dataclass(frozen=True)
class ParseDiagnostic:
    severity: str
    code: str
    message: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.severity}:{self.line}:{self.column}: {self.code}: {self.message}"


class ModelSpecError(ModelError):
    """A model file has errors; ``diagnostics`` lists them in file order."""

    code = "ParseError"

    def __init__(self, diagnostics: list[ParseDiagnostic]):
        self.diagnostics = diagnostics
        errors = [d for d in diagnostics if d.severity == "error"]
        if errors:
            self.code = errors[0].code
        super().__init__("; ".join(str(d) for d in errors) or "invalid model file")


@dataclass(frozen=True)
class Prob:
    """A probability entry; ``rational`` keeps ``a/b`` text verbatim."""

    value: float
    rational: str | None = None

    def __str__(self) -> str:
        if self.rational is not None:
            return self.rational
        text = repr(self.value)
        return text[:-2] if text.endswith(".0") else text


@dataclass
class ModelDocument:
    name: str
    params: tuple[tuple[str, tuple], ...]
    outcomes: tuple
    rows: dict[tuple, tuple[Prob, ...]]
    spans: dict = field(default_factory=dict, compare=False, repr=False)
    warnings: list[ParseDiagnostic] = field(default_factory=list, compare=False, repr=False)

    def space(self) -> ParameterSpace:
        return ParameterSpace(self.params)


# ---------------------------------------------------------------------------
# Tokenizing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    text: str
    column: int
    quoted: bool = False

    @property
    def is_colon(self) -> bool:
        return not self.quoted and self.text == ":"


class _LineError(Exception):
    def __init__(self, column: int, message: str):
        self.column = column
        self.message = message


def _tokenize(line: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(line)
    while i < n:
        ch = line[i]
        if ch in " \t":
            i += 1
        elif ch == "#":
            break
        elif ch == ":":
            tokens.append(_Token(":", i + 1))
            i += 1
        elif ch == '"':
            start = i
            i += 1
            buf = []
            while True:
                if i >= n:
                    raise _LineError(start + 1, "unterminated quoted string")
                c = line[i]
                if c == "\\":
                    if i + 1 >= n or line[i + 1] not in '"\\':
                        raise _LineError(i + 1, "only \\\" and \\\\ escapes are allowed")
                    buf.append(line[i + 1])
                    i += 2
                elif c == '"':
                    i += 1
                    break
                else:
                    buf.append(c)
                    i += 1
            if i < n and line[i] not in " \t:#":
                raise _LineError(i + 1, "expected whitespace after quoted string")
            tokens.append(_Token("".join(buf), start + 1, quoted=True))
        else:
            start = i
            while i < n and line[i] not in ' \t:#"':
                i += 1
            if i < n and line[i] == '"':
                raise _LineError(i + 1, "quote inside a bare token")
            tokens.append(_Token(line[start:i], start + 1))
    return tokens


def _value_of(tok: _Token) -> Hashable:
    if tok.quoted:
        return tok.text
    if _INT.match(tok.text):
        return int(tok.text)
    if _DECIMAL.match(tok.text):
        v = float(tok.text)
        if math.isfinite(v):
            return v
    return tok.text


def _prob_of(tok: _Token) -> Prob:
    if tok.quoted:
        raise _LineError(tok.column, f"probability must not be quoted: {tok.text!r}")
    m = _RATIONAL.match(tok.text)
    if m:
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise _LineError(tok.column, f"zero denominator in {tok.text!r}")
        value = float(Fraction(num, den))
        rational = tok.text
    elif _DECIMAL.match(tok.text):
        value = float(tok.text)
        rational = None
    else:
        raise _LineError(tok.column, f"not a probability: {tok.text!r} (use a decimal or a/b)")
    if not (0.0 <= value <= 1.0):
        raise _LineError(tok.column, f"probability {tok.text} is outside [0, 1]")
    return Prob(value, rational)


def format_value(value: Hashable) -> str:
    """Token text for a parameter value or outcome label."""
    if isinstance(value, bool):
        value = str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    text = str(value)
    if _BARE_SAFE.match(text) and _value_of(_Token(text, 1)) == text:
        return text
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def check(text: str) -> tuple[ModelDocument | None, list[ParseDiagnostic]]:
    """Parse ``text``; never raises on bad input.

    Returns the document (``None`` if there were errors) and every
    diagnostic, errors and warnings, in line order.
    """
    diags: list[ParseDiagnostic] = []

    def error(code, message, line, column):
        diags.append(ParseDiagnostic("error", code, message, line, column))

    name = None
    params: list[tuple[str, tuple]] = []
    param_lookup: list[dict] = []
    outcomes: tuple | None = None
    rows: dict[tuple, tuple[Prob, ...]] = {}
    spans: dict = {}
    seen_keywords: set[str] = set()

    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw[:-1] if raw.endswith("\r") else raw
        try:
            tokens = _tokenize(line)
        except _LineError as e:
            error("SyntaxError", e.message, lineno, e.column)
            continue
        if not tokens:
            continue
        head = tokens[0]
        keyword = head.text if not head.quoted else None
        rest = tokens[1:]
        seen_keywords.add(keyword)

        if keyword == "model":
            if len(rest) != 1 or rest[0].is_colon:
                error("SyntaxError", "expected: model <name>", lineno, head.column)
            elif name is not None:
                error("DuplicateDeclaration", "model declared twice", lineno, head.column)
            else:
                name = rest[0].text
                spans["model"] = (lineno, head.column)

        elif keyword == "param":
            if len(rest) < 3 or rest[0].quoted or not rest[1].is_colon:
                error("SyntaxError", "expected: param <ident> : <v1> <v2> ...", lineno, head.column)
                continue
            pname = rest[0].text
            if not _IDENT.match(pname):
                error("SyntaxError", f"invalid parameter name {pname!r}", lineno, rest[0].column)
                continue
            if rows:
                error("SyntaxError", "param declared after rows", lineno, head.column)
                continue
            if any(p == pname for p, _ in params):
                error("DuplicateDeclaration", f"parameter {pname!r} declared twice", lineno, rest[0].column)
                continue
            values, lookup, ok = [], {}, True
            for tok in rest[2:]:
                if tok.is_colon:
                    error("SyntaxError", "unexpected ':'", lineno, tok.column)
                    ok = False
                    break
                v = _value_of(tok)
                if v in lookup:
                    error("DuplicateValue", f"value {tok.text!r} repeated in parameter {pname!r}", lineno, tok.column)
                    ok = False
                    break
                lookup[v] = len(values)
                values.append(v)
            if ok:
                params.append((pname, tuple(values)))
                param_lookup.append(lookup)
                spans[("param", pname)] = (lineno, head.column)

        elif keyword == "outcome":
            if len(rest) < 2 or not rest[0].is_colon:
                error("SyntaxError", "expected: outcome : <o1> <o2> ...", lineno, head.column)
                continue
            if outcomes is not None:
                error("DuplicateDeclaration", "outcome declared twice", lineno, head.column)
                continue
            labels, seen, ok = [], set(), True
            for tok in rest[1:]:
                if tok.is_colon:
                    error("SyntaxError", "unexpected ':'", lineno, tok.column)
                    ok = False
                    break
                v = _value_of(tok)
                if v in seen:
                    error("DuplicateValue", f"outcome {tok.text!r} repeated", lineno, tok.column)
                    ok = False
                    break
                seen.add(v)
                labels.append(v)
            if ok:
                outcomes = tuple(labels)
                spans["outcome"] = (lineno, head.column)

        elif keyword == "row":
            if not params or outcomes is None:
                error("SyntaxError", "row before param and outcome declarations", lineno, head.column)
                continue
            colons = [i for i, t in enumerate(rest) if t.is_colon]
            if len(colons) != 1:
                error("SyntaxError", "expected: row <v1> ... : <p1> ...", lineno, head.column)
                continue
            keys, probs_tok = rest[: colons[0]], rest[colons[0] + 1:]
            if len(keys) != len(params):
                error("SyntaxError", f"expected {len(params)} parameter value(s), got {len(keys)}", lineno, head.column)
                continue
            if len(probs_tok) != len(outcomes):
                col = probs_tok[0].column if probs_tok else rest[colons[0]].column
                error("SyntaxError", f"expected {len(outcomes)} probabilities, got {len(probs_tok)}", lineno, col)
                continue
            key, ok = [], True
            for tok, (pname, _), lookup in zip(keys, params, param_lookup):
                v = _value_of(tok)
                if v not in lookup:
                    error("UnknownValue", f"{tok.text!r} is not a value of parameter {pname!r}", lineno, tok.column)
                    ok = False
                    break
                key.append(v)
            if not ok:
                continue
            key = tuple(key)
            if key in rows:
                first = spans[("row", key)][0]
                error("DuplicateRow", f"row {key!r} already given on line {first}", lineno, head.column)
                continue
            try:
                probs = tuple(_prob_of(t) for t in probs_tok)
            except _LineError as e:
                error("SyntaxError", e.message, lineno, e.column)
                continue
            total = math.fsum(p.value for p in probs)
            dev = abs(total - 1.0)
            if dev > NORMALIZATION_TOL:
                error("RowNotNormalized", f"probabilities sum to {total!r}", lineno, probs_tok[0].column)
                continue
            if dev > WARN_TOL:
                diags.append(ParseDiagnostic(
                    "warning", "RowNearlyNormalized", f"probabilities sum to {total!r}", lineno, probs_tok[0].column,
                ))
            rows[key] = probs
            spans[("row", key)] = (lineno, head.column)

        else:
            error("SyntaxError", f"unknown construct {head.text!r}", lineno, head.column)

    last = max((i for i, ln in enumerate(text.split("\n"), start=1) if ln.strip()), default=1)
    if "model" not in seen_keywords:
        error("MissingDeclaration", "no 'model <name>' line", 1, 1)
    if "param" not in seen_keywords:
        error("MissingDeclaration", "no 'param' line", 1, 1)
    if "outcome" not in seen_keywords:
        error("MissingDeclaration", "no 'outcome' line", 1, 1)
    if params and outcomes is not None and not any(d.severity == "error" for d in diags):
        for key in itertools.product(*(v for _, v in params)):
            if key not in rows:
                error("MissingRow", f"no row for {' '.join(format_value(v) for v in key)}", last, 1)

    diags.sort(key=lambda d: (d.line, d.column))
    if any(d.severity == "error" for d in diags):
        return None, diags
    doc = ModelDocument(name, tuple(params), outcomes, rows, spans,
                        [d for d in diags if d.severity == "warning"])
    return doc, diags


def parse(text: str) -> ModelDocument:
    """Parse a model file.

    Raises
    ------
    ModelSpecError
        With every error diagnostic (line and column included).
    """
    doc, diags = check(text)
    if doc is None:
        raise ModelSpecError(diags)
    return doc


def serialize(doc: ModelDocument) -> str:
    """Canonical text: model, params, outcome, then rows in point order.

    Comments are dropped, tokens are separated by single spaces, rationals are
    kept verbatim and decimals use the shortest repr that round-trips.
    """
    lines = [f"model {format_value(doc.name)}"]
    for pname, values in doc.params:
        lines.append(f"param {pname} : " + " ".join(format_value(v) for v in values))
    lines.append("outcome : " + " ".join(format_value(o) for o in doc.outcomes))
    for key in itertools.product(*(v for _, v in doc.params)):
        probs = doc.rows[key]
        lines.append(
            "row " + " ".join(format_value(v) for v in key) + " : " + " ".join(str(p) for p in probs)
        )
    return "\n".join(lines) + "\n"


def to_model(doc: ModelDocument) -> DiscreteModel:
    """Dense :class:`DiscreteModel` with the document's table."""
    space = doc.space()
    outcomes = OutcomeSpace.enumerated(doc.outcomes)
    table = {key: [p.value for p in probs] for key, probs in doc.rows.items()}
    return build_model(space, outcomes, table, name=doc.name)


def document_from_model(model: DiscreteModel, name: str | None = None) -> ModelDocument:
    """Table of a (small) model as a document, probabilities as decimals."""
    params = tuple((n, tuple(v)) for n, v in model.space.dimensions)
    rows = {point.values: tuple(Prob(float(p)) for p in probs) for point, probs in model.rows()}
    return ModelDocument(name or model.name or "model", params, tuple(model.outcomes), rows)


def read_text(path: str | Path) -> str:
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ModelSpecError([ParseDiagnostic("error", "EncodingError", f"not UTF-8: {e.reason}", 1, 1)]) from None


def load(path: str | Path) -> DiscreteModel:
    return to_model(parse(read_text(path)))
