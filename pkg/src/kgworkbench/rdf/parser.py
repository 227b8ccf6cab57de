"""Turtle parser for oracle-emitted RDF.

Covers the Turtle subset the pipeline needs: ``@prefix``/``PREFIX``
directives, prefixed names, full IRIs, blank node labels, string literals
(single/double/long quote forms) with language tags or datatypes, numeric
and boolean literals, predicate lists (``;``), object lists (``,``), and
comments. Anonymous blank-node property lists and collections are rejected:
a block that cannot be read cleanly must surface as a syntax failure, which
downstream records as a failed syntactic check rather than guessing.

Facts are segmented by subject block: consecutive triples are grouped by
subject in first-appearance order, never by comment headers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .model import (
    BLANK_NS,
    RDF_NS,
    XSD_NS,
    EntityRef,
    Fact,
    Literal,
    RdfDocument,
    Triple,
)


class TurtleSyntaxError(Exception):
    """Raised when input is not parseable Turtle; carries line/column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str
    value: str
    line: int
    column: int
    offset: int
    end: int


_IRIREF_RE = re.compile(r"<([^<>\"{}|^`\\\x00-\x20]*)>")
_PNAME_RE = re.compile(
    r"(?P<prefix>[A-Za-z_][\w.\-]*)?:"
    r"(?P<local>[\w\-](?:[\w.\-]*[\w\-])?)?"
)
_BLANK_RE = re.compile(r"_:(?P<label>[\w\-](?:[\w.\-]*[\w\-])?)")
# Decimals require digits after the dot so "5." lexes as 5 then DOT.
_NUMBER_RE = re.compile(
    r"[+-]?(?:\d+\.\d+(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?"
    r"|\d+(?:[eE][+-]?\d+)?)"
)
_BARE_WORD_RE = re.compile(r"[A-Za-z_][\w\-]*")
_LANGTAG_RE = re.compile(r"@([A-Za-z]+(?:-[\w]+)*)")

_STRING_OPENERS = ('"""', "'''", '"', "'")

_ESCAPE_MAP = {
    "t": "\t",
    "n": "\n",
    "r": "\r",
    "b": "\b",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def _advance(self, n: int) -> None:
        chunk = self.text[self.pos : self.pos + n]
        newlines = chunk.count("\n")
        if newlines:
            self.line += newlines
            self.col = n - chunk.rfind("\n")
        else:
            self.col += n
        self.pos += n

    def _skip_ws_and_comments(self) -> None:
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in " \t\r\n":
                self._advance(1)
            elif ch == "#":
                end = self.text.find("\n", self.pos)
                self._advance((end if end != -1 else len(self.text)) - self.pos)
            else:
                return

    def error(self, message: str) -> TurtleSyntaxError:
        return TurtleSyntaxError(message, self.line, self.col)

    def _read_string(self) -> _Token:
        start_line, start_col, start = self.line, self.col, self.pos
        text = self.text
        opener = next(o for o in _STRING_OPENERS if text.startswith(o, start))
        long_form = len(opener) == 3
        i = start + len(opener)
        out: list[str] = []
        while True:
            if i >= len(text):
                raise TurtleSyntaxError(
                    "unterminated string literal", start_line, start_col
                )
            if text.startswith(opener, i):
                if long_form:
                    # Quote runs longer than the closer keep the extras as
                    # content; the delimiter is the final three quotes.
                    run = 0
                    while i + run < len(text) and text[i + run] == opener[0]:
                        run += 1
                    if run > 3:
                        out.append(opener[0] * (run - 3))
                        i += run - 3
                i += len(opener)
                break
            ch = text[i]
            if ch == "\\":
                if i + 1 >= len(text):
                    raise TurtleSyntaxError(
                        "dangling escape in string", start_line, start_col
                    )
                esc = text[i + 1]
                if esc in _ESCAPE_MAP:
                    out.append(_ESCAPE_MAP[esc])
                    i += 2
                elif esc in "uU":
                    width = 4 if esc == "u" else 8
                    hexpart = text[i + 2 : i + 2 + width]
                    if len(hexpart) != width or not re.fullmatch(
                        r"[0-9A-Fa-f]+", hexpart
                    ):
                        raise TurtleSyntaxError(
                            "bad unicode escape", start_line, start_col
                        )
                    out.append(chr(int(hexpart, 16)))
                    i += 2 + width
                else:
                    raise TurtleSyntaxError(
                        f"unknown escape \\{esc}", start_line, start_col
                    )
            elif ch == "\n" and not long_form:
                raise TurtleSyntaxError(
                    "newline in short string literal", start_line, start_col
                )
            else:
                out.append(ch)
                i += 1
        token = _Token("STRING", "".join(out), start_line, start_col, start, i)
        self._advance(i - start)
        return token

    def next_token(self) -> _Token:
        self._skip_ws_and_comments()
        if self.pos >= len(self.text):
            return _Token("EOF", "", self.line, self.col, self.pos, self.pos)
        text, start = self.text, self.pos
        line, col = self.line, self.col

        def tok(kind: str, value: str, end: int) -> _Token:
            t = _Token(kind, value, line, col, start, end)
            self._advance(end - start)
            return t

        ch = text[start]
        if ch in "\"'":
            return self._read_string()
        if ch == "<":
            m = _IRIREF_RE.match(text, start)
            if not m:
                raise self.error("malformed IRI reference")
            return tok("IRIREF", m.group(1), m.end())
        for punct, kind in ((".", "DOT"), (";", "SEMI"), (",", "COMMA")):
            if ch == punct:
                return tok(kind, punct, start + 1)
        if ch in "[]()":
            raise self.error(
                "anonymous blank nodes and collections are not supported"
            )
        if text.startswith("^^", start):
            return tok("HATHAT", "^^", start + 2)
        if ch == "@":
            if text.startswith("@prefix", start):
                return tok("PREFIX_DIR", "@prefix", start + len("@prefix"))
            if text.startswith("@base", start):
                raise self.error("@base directives are not supported")
            m = _LANGTAG_RE.match(text, start)
            if m:
                return tok("LANGTAG", m.group(1), m.end())
            raise self.error("malformed @ directive or language tag")
        if ch == "_" and text.startswith("_:", start):
            m = _BLANK_RE.match(text, start)
            if not m:
                raise self.error("malformed blank node label")
            return tok("BLANK", m.group("label"), m.end())
        if ch.isdigit() or (ch in "+-." and _NUMBER_RE.match(text, start)):
            m = _NUMBER_RE.match(text, start)
            if m and not _is_pname_ahead(text, m.end()):
                return tok("NUMBER", m.group(0), m.end())
        m = _PNAME_RE.match(text, start)
        if m and ":" in text[start : m.end()]:
            return tok("PNAME", text[start : m.end()], m.end())
        m = _BARE_WORD_RE.match(text, start)
        if m:
            word = m.group(0)
            if word in ("true", "false"):
                return tok("BOOLEAN", word, m.end())
            if word == "a":
                return tok("A", word, m.end())
            if word.upper() == "PREFIX":
                return tok("SPARQL_PREFIX", word, m.end())
            if word.upper() == "BASE":
                raise self.error("BASE directives are not supported")
            raise self.error(f"unexpected bare word {word!r}")
        raise self.error(f"unexpected character {ch!r}")


def _is_pname_ahead(text: str, pos: int) -> bool:
    # "12:30" style tokens must not be misread as a number then junk.
    return pos < len(text) and text[pos] == ":"


_NUMERIC_DATATYPES = {
    "integer": XSD_NS + "integer",
    "decimal": XSD_NS + "decimal",
    "double": XSD_NS + "double",
}


def split_iri(iri: str) -> EntityRef:
    """Split a full IRI into (namespace, local) at the last '#' or '/'."""
    for sep in ("#", "/"):
        idx = iri.rfind(sep)
        if 0 <= idx < len(iri) - 1:
            return EntityRef(iri[: idx + 1], iri[idx + 1 :])
    return EntityRef("", iri)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokenizer = _Tokenizer(text)
        self.token = self.tokenizer.next_token()
        self.prefixes: dict[str, str] = {}
        # subject -> (triples, raw statement slices), insertion ordered
        self.blocks: dict[EntityRef, tuple[list[Triple], list[str]]] = {}

    def _advance(self) -> _Token:
        tok = self.token
        self.token = self.tokenizer.next_token()
        return tok

    def _expect(self, kind: str, what: str) -> _Token:
        if self.token.kind != kind:
            raise self._error(f"expected {what}, found {self.token.value!r}")
        return self._advance()

    def _error(self, message: str) -> TurtleSyntaxError:
        tok = self.token
        return TurtleSyntaxError(message, tok.line, tok.column)

    def parse(self) -> RdfDocument:
        if not self.text.strip():
            raise TurtleSyntaxError("document has no content", 1, 1)
        while self.token.kind != "EOF":
            if self.token.kind == "PREFIX_DIR":
                self._parse_prefix(directive=True)
            elif self.token.kind == "SPARQL_PREFIX":
                self._parse_prefix(directive=False)
            else:
                self._parse_triples_block()
        facts = tuple(
            Fact(i + 1, subject, tuple(triples), "\n".join(raws))
            for i, (subject, (triples, raws)) in enumerate(self.blocks.items())
        )
        return RdfDocument(prefixes=dict(self.prefixes), facts=facts, source=self.text)

    def _parse_prefix(self, directive: bool) -> None:
        self._advance()
        name_tok = self._expect("PNAME", "prefix name")
        if not name_tok.value.endswith(":"):
            raise TurtleSyntaxError(
                "prefix declaration must end with ':'", name_tok.line, name_tok.column
            )
        prefix = name_tok.value[:-1]
        iri_tok = self._expect("IRIREF", "namespace IRI")
        if directive:
            self._expect("DOT", "'.' after @prefix directive")
        self.prefixes[prefix] = iri_tok.value

    def _resolve_pname(self, tok: _Token) -> EntityRef:
        prefix, _, local = tok.value.partition(":")
        if prefix not in self.prefixes:
            raise TurtleSyntaxError(
                f"undefined prefix {prefix + ':'!r}", tok.line, tok.column
            )
        if not local:
            raise TurtleSyntaxError(
                f"prefixed name {tok.value!r} has no local part", tok.line, tok.column
            )
        return EntityRef(self.prefixes[prefix], local)

    def _parse_subject(self) -> EntityRef:
        tok = self.token
        if tok.kind == "IRIREF":
            self._advance()
            return split_iri(tok.value)
        if tok.kind == "PNAME":
            self._advance()
            return self._resolve_pname(tok)
        if tok.kind == "BLANK":
            self._advance()
            return EntityRef(BLANK_NS, tok.value)
        raise self._error("expected a subject (IRI, prefixed name, or blank node)")

    def _parse_predicate(self) -> EntityRef:
        tok = self.token
        if tok.kind == "A":
            self._advance()
            return EntityRef(RDF_NS, "type")
        if tok.kind == "IRIREF":
            self._advance()
            return split_iri(tok.value)
        if tok.kind == "PNAME":
            self._advance()
            return self._resolve_pname(tok)
        raise self._error("expected a predicate")

    def _parse_object(self):
        tok = self.token
        if tok.kind == "IRIREF":
            self._advance()
            return split_iri(tok.value)
        if tok.kind == "PNAME":
            self._advance()
            return self._resolve_pname(tok)
        if tok.kind == "BLANK":
            self._advance()
            return EntityRef(BLANK_NS, tok.value)
        if tok.kind == "STRING":
            self._advance()
            if self.token.kind == "LANGTAG":
                lang = self._advance().value
                return Literal(tok.value, lang=lang)
            if self.token.kind == "HATHAT":
                self._advance()
                dt_tok = self.token
                if dt_tok.kind == "IRIREF":
                    self._advance()
                    return Literal(tok.value, datatype=dt_tok.value)
                if dt_tok.kind == "PNAME":
                    self._advance()
                    return Literal(
                        tok.value, datatype=self._resolve_pname(dt_tok).expanded
                    )
                raise self._error("expected datatype IRI after ^^")
            return Literal(tok.value)
        if tok.kind == "NUMBER":
            self._advance()
            kind = (
                "double"
                if "e" in tok.value.lower()
                else "decimal"
                if "." in tok.value
                else "integer"
            )
            return Literal(tok.value, datatype=_NUMERIC_DATATYPES[kind])
        if tok.kind == "BOOLEAN":
            self._advance()
            return Literal(tok.value, datatype=XSD_NS + "boolean")
        raise self._error("expected an object (IRI, blank node, or literal)")

    def _parse_triples_block(self) -> None:
        start = self.token.offset
        subject = self._parse_subject()
        triples: list[Triple] = []
        while True:
            predicate = self._parse_predicate()
            while True:
                obj = self._parse_object()
                triples.append(Triple(subject, predicate, obj))
                if self.token.kind == "COMMA":
                    self._advance()
                    continue
                break
            if self.token.kind == "SEMI":
                self._advance()
                # Turtle allows trailing ';' before the closing dot.
                if self.token.kind == "DOT":
                    break
                continue
            break
        end_tok = self._expect("DOT", "'.' at end of statement")
        raw = self.text[start : end_tok.end]
        block = self.blocks.setdefault(subject, ([], []))
        block[0].extend(triples)
        block[1].append(raw)


def parse_ttl(raw: str) -> RdfDocument:
    """Parse Turtle text into a document of subject-block Facts.

    Raises TurtleSyntaxError (with line/column) on anything unparseable,
    including empty input; a prefix-only document parses to zero facts.
    """
    return _Parser(raw).parse()
