"""Lexing and signature-level parsing of Java sources into class models.

The parser is deliberately shallow. It understands class and interface
headers, field declarations, method and constructor signatures, and scans
method bodies for local declarations and ``new`` expressions. Anything else
(annotations, enums, records, initializer blocks, generic bounds) is stepped
over with balanced-delimiter recovery so that real code bases never abort
the analysis.
"""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import GLOBAL, Diagnostic, EmptyCodebaseError, LexicalError, ParseError

KEYWORDS = frozenset(
    """
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while
    """.split()
)
LITERAL_WORDS = frozenset({"true", "false", "null"})
PRIMITIVES = frozenset({"boolean", "byte", "char", "short", "int", "long", "float", "double"})
MODIFIERS = frozenset(
    {
        "public", "protected", "private", "static", "final", "abstract", "native",
        "synchronized", "transient", "volatile", "strictfp", "default",
    }
)


class TokenKind(enum.Enum):
    IDENTIFIER = "identifier"
    KEYWORD = "keyword"
    PUNCTUATION = "punctuation"
    LITERAL = "literal"
    EOF = "end-of-file"


@dataclass(frozen=True, slots=True)
class Token:
    kind: TokenKind
    text: str
    line: int
    column: int

    def is_(self, text: str) -> bool:
        return self.text == text and self.kind is not TokenKind.LITERAL

    @property
    def is_ident(self) -> bool:
        return self.kind is TokenKind.IDENTIFIER


class Visibility(str, enum.Enum):
    PUBLIC = "public"
    PROTECTED = "protected"
    PACKAGE = "package"
    PRIVATE = "private"


class EvidenceKind(str, enum.Enum):
    LOCAL_DECLARATION = "localDeclaration"
    INSTANTIATION = "instantiation"


@dataclass(frozen=True)
class TypeRef:
    raw_text: str
    # raw type's simple name first, then generic argument names; arrays stripped
    resolved_simple_names: tuple[str, ...] = ()

    @property
    def is_void(self) -> bool:
        return not self.resolved_simple_names


VOID = TypeRef("void")
NO_TYPE = TypeRef("")


@dataclass(frozen=True)
class BodyEvidence:
    name: str
    kind: EvidenceKind
    line: int


@dataclass(frozen=True)
class MemberField:
    name: str
    type: TypeRef
    visibility: Visibility
    is_static: bool
    initializer_instantiates: str | None
    line: int


@dataclass(frozen=True)
class MethodSig:
    name: str
    return_type: TypeRef
    params: tuple[TypeRef, ...]
    visibility: Visibility
    is_static: bool
    is_final: bool
    is_constructor: bool
    body_type_evidence: tuple[BodyEvidence, ...]
    line: int


@dataclass(frozen=True)
class ClassModel:
    qualified_name: str
    kind: str  # "class" | "interface"
    extends_names: tuple[str, ...]
    implements_names: tuple[str, ...]
    fields: tuple[MemberField, ...]
    methods: tuple[MethodSig, ...]
    source_file: str
    line: int

    @property
    def simple_name(self) -> str:
        return self.qualified_name.rsplit(".", 1)[-1]


@dataclass(frozen=True)
class CodebaseModel:
    classes: tuple[ClassModel, ...]
    simple_name_index: Mapping[str, tuple[str, ...]]
    diagnostics: tuple[Diagnostic, ...] = ()
    file_count: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "_by_name", {c.qualified_name: c for c in self.classes})

    def get(self, qualified_name: str) -> ClassModel:
        return self._by_name[qualified_name]  # type: ignore[attr-defined]

    def __contains__(self, qualified_name: object) -> bool:
        return qualified_name in self._by_name  # type: ignore[attr-defined]

    @property
    def class_names(self) -> list[str]:
        return sorted(self._by_name)  # type: ignore[attr-defined]

    def resolve(self, simple_name: str) -> tuple[str, ...]:
        """All user-defined classes a simple name may denote (empty if external)."""
        return self.simple_name_index.get(simple_name, ())


# ---------------------------------------------------------------------------
# lexing


def strip_comments_and_strings(source: str) -> str:
    """Blank out comments and literal contents, preserving every offset and newline.

    String and char literals keep their quote delimiters so they still lex as
    (empty) literals.
    """
    out = list(source)
    n = len(source)

    def blank(lo: int, hi: int) -> None:
        for k in range(lo, hi):
            if out[k] not in "\r\n":
                out[k] = " "

    def line_at(pos: int) -> int:
        return source.count("\n", 0, pos) + 1

    i = 0
    while i < n:
        c = source[i]
        nxt = source[i + 1] if i + 1 < n else ""
        if c == "/" and nxt == "/":
            j = source.find("\n", i)
            j = n if j == -1 else j
            blank(i, j)
            i = j
        elif c == "/" and nxt == "*":
            j = source.find("*/", i + 2)
            if j == -1:
                raise LexicalError("unterminated block comment", line_at(i))
            blank(i, j + 2)
            i = j + 2
        elif c == '"' and source.startswith('"""', i):
            k = i + 3
            while k < n and not source.startswith('"""', k):
                k += 2 if source[k] == "\\" else 1
            if k >= n:
                raise LexicalError("unterminated text block", line_at(i))
            blank(i + 3, k)
            i = k + 3
        elif c in "\"'":
            k = i + 1
            while k < n and source[k] != c:
                if source[k] == "\n":
                    break
                k += 2 if source[k] == "\\" else 1
            if k >= n or source[k] != c:
                kind = "string" if c == '"' else "character"
                raise LexicalError(f"unterminated {kind} literal", line_at(i))
            blank(i + 1, k)
            i = k + 1
        else:
            i += 1
    return "".join(out)


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c in "_$"


def _is_ident_part(c: str) -> bool:
    return c.isalnum() or c in "_$"


def tokenize(source: str) -> list[Token]:
    """Token stream for comment-stripped source, terminated by one EOF token."""
    tokens: list[Token] = []
    n = len(source)
    i, line, col = 0, 1, 1
    while i < n:
        c = source[i]
        if c == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if c.isspace():
            i, col = i + 1, col + 1
            continue
        j = i + 1
        if _is_ident_start(c):
            while j < n and _is_ident_part(source[j]):
                j += 1
            word = source[i:j]
            if word in KEYWORDS:
                kind = TokenKind.KEYWORD
            elif word in LITERAL_WORDS:
                kind = TokenKind.LITERAL
            else:
                kind = TokenKind.IDENTIFIER
        elif c.isdigit() or (c == "." and j < n and source[j].isdigit()):
            hexa = source.startswith(("0x", "0X"), i)
            while j < n:
                d = source[j]
                if _is_ident_part(d) or d == ".":
                    j += 1
                elif d in "+-" and source[j - 1] in ("pP" if hexa else "eE"):
                    j += 1
                else:
                    break
            kind = TokenKind.LITERAL
        elif c in "\"'":
            if source.startswith('"""', i):
                end = source.find('"""', i + 3)
                j = n if end == -1 else end + 3
            else:
                end = source.find(c, i + 1)
                j = n if end == -1 else end + 1
            kind = TokenKind.LITERAL
        elif source.startswith("...", i):
            j = i + 3
            kind = TokenKind.PUNCTUATION
        else:
            kind = TokenKind.PUNCTUATION
        text = source[i:j]
        tokens.append(Token(kind, text, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += j - i
        i = j
    tokens.append(Token(TokenKind.EOF, "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# type references


def _tok(tokens: Sequence[Token], i: int) -> Token:
    if i < len(tokens):
        return tokens[i]
    last = tokens[-1] if tokens else None
    return Token(TokenKind.EOF, "", last.line if last else 1, last.column if last else 1)


def _skip_annotation(tokens: Sequence[Token], i: int) -> int:
    """Index just past an annotation starting at ``@``."""
    i += 1
    while _tok(tokens, i).is_ident:
        i += 1
        if _tok(tokens, i).is_(".") and _tok(tokens, i + 1).is_ident:
            i += 1
        else:
            break
    if _tok(tokens, i).is_("("):
        depth = 0
        while _tok(tokens, i).kind is not TokenKind.EOF:
            t = _tok(tokens, i)
            if t.is_("("):
                depth += 1
            elif t.is_(")"):
                depth -= 1
                if depth == 0:
                    return i + 1
            i += 1
    return i


def _render(tokens: Sequence[Token]) -> str:
    parts: list[str] = []
    prev_word = False
    for t in tokens:
        word = t.kind is not TokenKind.PUNCTUATION or t.text == "?"
        if parts and word and prev_word:
            parts.append(" ")
        parts.append(t.text)
        prev_word = word
    return "".join(parts)


def _dedupe(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(dict.fromkeys(names))


def _read_type_args(tokens: Sequence[Token], i: int) -> tuple[list[str] | None, int]:
    i += 1  # '<'
    names: list[str] = []
    if _tok(tokens, i).is_(">"):
        return names, i + 1
    while True:
        if _tok(tokens, i).is_("?"):
            i += 1
            if _tok(tokens, i).text in ("extends", "super"):
                ref, i = read_type(tokens, i + 1)
                if ref is None:
                    return None, i
                names.extend(ref.resolved_simple_names)
        else:
            ref, i = read_type(tokens, i)
            if ref is None:
                return None, i
            names.extend(ref.resolved_simple_names)
        t = _tok(tokens, i)
        if t.is_(","):
            i += 1
        elif t.is_(">"):
            return names, i + 1
        else:
            return None, i


def read_type(tokens: Sequence[Token], i: int) -> tuple[TypeRef | None, int]:
    """Try to read a type at ``i``; return ``(None, i)`` if there is none."""
    start = i
    while _tok(tokens, i).is_("@") and not _tok(tokens, i + 1).is_("interface"):
        i = _skip_annotation(tokens, i)
    t = _tok(tokens, i)
    names: list[str] = []
    if t.kind is TokenKind.KEYWORD and (t.text in PRIMITIVES or t.text == "void"):
        i += 1
    elif t.is_ident:
        args: list[str] = []
        simple = t.text
        while True:
            simple = _tok(tokens, i).text
            i += 1
            if _tok(tokens, i).is_("<"):
                got, i = _read_type_args(tokens, i)
                if got is None:
                    return None, start
                args.extend(got)
            if _tok(tokens, i).is_(".") and _tok(tokens, i + 1).is_ident:
                i += 1
                continue
            break
        names = [simple, *args]
    else:
        return None, start
    while _tok(tokens, i).is_("[") and _tok(tokens, i + 1).is_("]"):
        i += 2
    raw = _render([tk for tk in tokens[start:i] if not tk.is_("@")])
    return TypeRef(raw, _dedupe(names)), i


def _instantiated_name(tokens: Sequence[Token], i: int) -> str | None:
    """Simple name created by the ``new`` token at ``i`` (None for primitives)."""
    ref, _ = read_type(tokens, i + 1)
    if ref is None or not ref.resolved_simple_names:
        return None
    return ref.resolved_simple_names[0]


# ---------------------------------------------------------------------------
# body scanning


_STATEMENT_BOUNDARY = frozenset({";", "{", "}"})


def scan_body_evidence(
    body_tokens: Sequence[Token], known_simple_names: set[str] | frozenset[str] | None = None
) -> tuple[BodyEvidence, ...]:
    """Collect instantiation and local-declaration evidence from a method body.

    With ``known_simple_names=None`` every candidate name is kept; callers that
    know the user-defined class set filter later.
    """
    found: list[BodyEvidence] = []

    def add(names: Iterable[str], kind: EvidenceKind, line: int) -> None:
        for name in names:
            if known_simple_names is None or name in known_simple_names:
                found.append(BodyEvidence(name, kind, line))

    n = len(body_tokens)
    for i in range(n):
        t = body_tokens[i]
        if t.kind is TokenKind.KEYWORD and t.text == "new":
            ref, _ = read_type(body_tokens, i + 1)
            if ref is not None:
                add(ref.resolved_simple_names, EvidenceKind.INSTANTIATION, t.line)
            continue
        prev = body_tokens[i - 1] if i else None
        for_header = (
            prev is not None and prev.is_("(") and i >= 2 and body_tokens[i - 2].is_("for")
        )
        if not (prev is None or prev.text in _STATEMENT_BOUNDARY or for_header):
            continue
        k = i
        while _tok(body_tokens, k).is_("final") or _tok(body_tokens, k).is_("@"):
            k = k + 1 if _tok(body_tokens, k).is_("final") else _skip_annotation(body_tokens, k)
        if not _tok(body_tokens, k).is_ident:
            continue
        ref, end = read_type(body_tokens, k)
        if ref is None or not _tok(body_tokens, end).is_ident:
            continue
        terminator = _tok(body_tokens, end + 1)
        if terminator.is_("=") or terminator.is_(";") or (for_header and terminator.is_(":")):
            add(ref.resolved_simple_names, EvidenceKind.LOCAL_DECLARATION, body_tokens[k].line)
    return tuple(found)


# ---------------------------------------------------------------------------
# parsing


class _Malformed(Exception):
    def __init__(self, message: str, line: int):
        super().__init__(message)
        self.line = line


class _Parser:
    def __init__(self, tokens: list[Token], source_file: str, diagnostics: list[Diagnostic]):
        if not tokens or tokens[-1].kind is not TokenKind.EOF:
            tokens = [*tokens, _tok(tokens, len(tokens))]
        self.toks = tokens
        self.pos = 0
        self.file = source_file
        self.diagnostics = diagnostics
        self.package = ""
        self.classes: list[ClassModel | None] = []

    # token helpers

    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def at(self, text: str, k: int = 0) -> bool:
        return self.peek(k).is_(text)

    def at_eof(self) -> bool:
        return self.peek().kind is TokenKind.EOF

    def advance(self) -> Token:
        t = self.peek()
        if t.kind is not TokenKind.EOF:
            self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            t = self.peek()
            raise _Malformed(f"expected {text!r}, found {t.text or 'end of file'!r}", t.line)
        return self.advance()

    def expect_ident(self) -> Token:
        t = self.peek()
        if not t.is_ident:
            raise _Malformed(f"expected identifier, found {t.text or 'end of file'!r}", t.line)
        return self.advance()

    def warn(self, message: str, line: int) -> None:
        self.diagnostics.append(Diagnostic("warning", self.file, line, message))

    # balanced skipping

    def skip_block(self) -> list[Token]:
        """Consume a ``{...}`` region and return the tokens strictly inside it."""
        open_tok = self.expect("{")
        start = self.pos
        depth = 1
        while depth:
            t = self.peek()
            if t.kind is TokenKind.EOF:
                raise ParseError(
                    f"unbalanced braces: '{{' opened at line {open_tok.line} is never closed",
                    self.file,
                    open_tok.line,
                )
            if t.is_("{"):
                depth += 1
            elif t.is_("}"):
                depth -= 1
            self.pos += 1
        return self.toks[start : self.pos - 1]

    def skip_angles(self) -> None:
        open_tok = self.expect("<")
        depth = 1
        while depth:
            t = self.peek()
            if t.kind is TokenKind.EOF or t.text in ("{", ";"):
                raise _Malformed("unterminated type parameter list", open_tok.line)
            if t.is_("<"):
                depth += 1
            elif t.is_(">"):
                depth -= 1
            self.pos += 1

    def skip_until_block(self) -> None:
        """Skip a declaration header up to and including its ``{...}`` body."""
        while not self.at("{"):
            if self.at_eof() or self.at(";"):
                raise _Malformed("declaration without a body", self.peek().line)
            self.advance()
        self.skip_block()

    def recover(self) -> None:
        """Resynchronise after a malformed declaration."""
        while not self.at_eof():
            if self.at(";"):
                self.advance()
                return
            if self.at("{"):
                self.skip_block()
                return
            if self.at("}"):
                return
            self.advance()

    def read_type(self) -> TypeRef:
        ref, end = read_type(self.toks, self.pos)
        if ref is None:
            t = self.peek()
            raise _Malformed(f"expected a type, found {t.text or 'end of file'!r}", t.line)
        self.pos = end
        return ref

    # grammar

    def parse(self) -> list[ClassModel]:
        while not self.at_eof():
            if self.at("package"):
                self.advance()
                parts = []
                while not self.at(";") and not self.at_eof():
                    parts.append(self.advance().text)
                self.package = "".join(parts)
                self.advance()
            elif self.at("import"):
                while not self.at(";") and not self.at_eof():
                    self.advance()
                self.advance()
            elif self.at(";"):
                self.advance()
            else:
                start = self.peek()
                try:
                    self.type_declaration(outer=None)
                except _Malformed as exc:
                    self.warn(f"skipped malformed top-level declaration: {exc}", exc.line)
                    if self.at("}"):
                        self.advance()
                    else:
                        self.recover()
                    if self.peek() is start:
                        self.advance()
        return [c for c in self.classes if c is not None]

    def modifiers(self) -> set[str]:
        mods: set[str] = set()
        while True:
            t = self.peek()
            if t.kind is TokenKind.KEYWORD and t.text in MODIFIERS:
                mods.add(t.text)
                self.advance()
            elif t.is_("@") and not self.at("interface", 1):
                self.pos = _skip_annotation(self.toks, self.pos)
            elif t.is_ident and t.text == "sealed":
                self.advance()
            elif t.is_ident and t.text == "non" and self.at("-", 1) and self.peek(2).text == "sealed":
                self.pos += 3
            else:
                return mods

    def at_unmodeled_type(self) -> bool:
        return (
            self.at("enum")
            or (self.at("@") and self.at("interface", 1))
            or (self.peek().is_ident and self.peek().text == "record" and self.peek(1).is_ident)
        )

    def type_declaration(self, outer: str | None) -> None:
        self.modifiers()
        if self.at("class") or self.at("interface"):
            self.class_declaration(outer)
        elif self.at_unmodeled_type():
            self.skip_until_block()
        else:
            t = self.peek()
            raise _Malformed(f"expected a type declaration, found {t.text!r}", t.line)

    def type_name_list(self) -> list[str]:
        names = [self._supertype_name()]
        while self.at(","):
            self.advance()
            names.append(self._supertype_name())
        return names

    def _supertype_name(self) -> str:
        ref = self.read_type()
        if ref.is_void:
            raise _Malformed(f"primitive supertype {ref.raw_text!r}", self.peek().line)
        return ref.resolved_simple_names[0]

    def class_declaration(self, outer: str | None) -> None:
        header = self.advance()
        kind = header.text
        name = self.expect_ident().text
        if outer:
            qname = f"{outer}.{name}"
        else:
            qname = f"{self.package}.{name}" if self.package else name
        if self.at("<"):
            self.skip_angles()
        extends: list[str] = []
        implements: list[str] = []
        while not self.at("{"):
            if self.at("extends"):
                self.advance()
                extends.extend(self.type_name_list())
            elif self.at("implements"):
                self.advance()
                (extends if kind == "interface" else implements).extend(self.type_name_list())
            elif self.peek().is_ident and self.peek().text == "permits":
                self.advance()
                self.type_name_list()
            else:
                t = self.peek()
                raise _Malformed(f"unexpected {t.text or 'end of file'!r} in {kind} header", t.line)

        slot = len(self.classes)
        self.classes.append(None)
        open_tok = self.expect("{")
        fields: list[MemberField] = []
        methods: list[MethodSig] = []
        while not self.at("}"):
            if self.at_eof():
                raise ParseError(
                    f"unbalanced braces: body of {kind} {name} opened at line "
                    f"{open_tok.line} is never closed",
                    self.file,
                    open_tok.line,
                )
            start = self.pos
            try:
                self.member(name, qname, kind == "interface", fields, methods)
            except _Malformed as exc:
                self.warn(f"skipped malformed member of {qname}: {exc}", exc.line)
                self.recover()
                if self.pos == start:
                    self.advance()
        self.advance()
        self.classes[slot] = ClassModel(
            qualified_name=qname,
            kind=kind,
            extends_names=tuple(extends),
            implements_names=tuple(implements),
            fields=tuple(fields),
            methods=tuple(methods),
            source_file=self.file,
            line=header.line,
        )

    def member(
        self,
        class_name: str,
        qname: str,
        in_interface: bool,
        fields: list[MemberField],
        methods: list[MethodSig],
    ) -> None:
        if self.at(";"):
            self.advance()
            return
        if self.at("{"):
            self.skip_block()
            return
        if self.at("static") and self.at("{", 1):
            self.advance()
            self.skip_block()
            return
        mods = self.modifiers()
        if self.at("class") or self.at("interface"):
            self.class_declaration(qname)
            return
        if self.at_unmodeled_type():
            self.skip_until_block()
            return
        if self.at("<"):
            self.skip_angles()

        visibility = _visibility(mods, in_interface)
        line = self.peek().line
        if self.peek().is_ident and self.peek().text == class_name and self.at("(", 1):
            name = self.advance().text
            params = self.params()
            self.skip_throws()
            body = self.skip_block()
            methods.append(
                MethodSig(name, NO_TYPE, params, visibility, "static" in mods, "final" in mods,
                          True, scan_body_evidence(body), line)
            )
            return

        type_ref = self.read_type()
        name_tok = self.expect_ident()
        if self.at("("):
            params = self.params()
            while self.at("[") and self.at("]", 1):
                self.pos += 2
            self.skip_throws()
            evidence: tuple[BodyEvidence, ...] = ()
            if self.at("{"):
                evidence = scan_body_evidence(self.skip_block())
            elif self.at(";"):
                self.advance()
            elif self.at("default"):  # annotation element default value
                self.recover()
            else:
                t = self.peek()
                raise _Malformed(f"expected method body or ';', found {t.text!r}", t.line)
            methods.append(
                MethodSig(name_tok.text, type_ref, params, visibility, "static" in mods,
                          "final" in mods, False, evidence, line)
            )
            return

        is_static = "static" in mods or in_interface
        while True:
            while self.at("[") and self.at("]", 1):
                self.pos += 2
            instantiates = None
            if self.at("="):
                self.advance()
                instantiates = self.initializer()
            fields.append(
                MemberField(name_tok.text, type_ref, visibility, is_static, instantiates, name_tok.line)
            )
            if self.at(","):
                self.advance()
                name_tok = self.expect_ident()
            elif self.at(";"):
                self.advance()
                return
            else:
                t = self.peek()
                raise _Malformed(f"expected ';' after field, found {t.text or 'end of file'!r}", t.line)

    def initializer(self) -> str | None:
        """Consume a field initializer; return the simple name of its first ``new``."""
        depth = 0
        instantiates = None
        while True:
            t = self.peek()
            if t.kind is TokenKind.EOF:
                raise _Malformed("unterminated field initializer", t.line)
            if depth == 0 and (t.is_(",") or t.is_(";")):
                return instantiates
            if t.text in ("(", "[", "{"):
                depth += 1
            elif t.text in (")", "]", "}"):
                depth -= 1
                if depth < 0:
                    raise _Malformed("unbalanced delimiters in field initializer", t.line)
            elif t.is_("new"):
                if instantiates is None:
                    instantiates = _instantiated_name(self.toks, self.pos)
                ref, end = read_type(self.toks, self.pos + 1)
                if ref is not None:
                    self.pos = end
                    continue
            elif t.is_(".") and self.at("<", 1):  # explicit generic call: x.<A, B>m()
                self.advance()
                self.skip_angles()
                continue
            self.advance()

    def params(self) -> tuple[TypeRef, ...]:
        self.expect("(")
        params: list[TypeRef] = []
        if self.at(")"):
            self.advance()
            return ()
        while True:
            while self.at("final") or self.at("@"):
                if self.at("final"):
                    self.advance()
                else:
                    self.pos = _skip_annotation(self.toks, self.pos)
            ref = self.read_type()
            if self.at("..."):
                self.advance()
            if self.at("this"):  # receiver parameter
                self.advance()
            else:
                self.expect_ident()
                while self.at("[") and self.at("]", 1):
                    self.pos += 2
                params.append(ref)
            if self.at(","):
                self.advance()
            elif self.at(")"):
                self.advance()
                return tuple(params)
            else:
                t = self.peek()
                raise _Malformed(f"unexpected {t.text or 'end of file'!r} in parameter list", t.line)

    def skip_throws(self) -> None:
        if self.at("throws"):
            self.advance()
            self.type_name_list()


def _visibility(mods: set[str], in_interface: bool) -> Visibility:
    for v in (Visibility.PUBLIC, Visibility.PROTECTED, Visibility.PRIVATE):
        if v.value in mods:
            return v
    return Visibility.PUBLIC if in_interface else Visibility.PACKAGE


def parse_compilation_unit(
    tokens: list[Token], source_file: str, diagnostics: list[Diagnostic] | None = None
) -> list[ClassModel]:
    """Parse a token stream into class models, outer classes before nested ones.

    Malformed members are skipped and reported into ``diagnostics``; unbalanced
    braces raise :class:`ParseError`.
    """
    sink: list[Diagnostic] = [] if diagnostics is None else diagnostics
    return _Parser(tokens, source_file, sink).parse()


def parse_source(
    source: str, source_file: str, diagnostics: list[Diagnostic] | None = None
) -> list[ClassModel]:
    return parse_compilation_unit(tokenize(strip_comments_and_strings(source)), source_file, diagnostics)


def _referenced_names(cls: ClassModel) -> set[str]:
    names = set(cls.extends_names) | set(cls.implements_names)
    for f in cls.fields:
        names.update(f.type.resolved_simple_names)
        if f.initializer_instantiates:
            names.add(f.initializer_instantiates)
    for m in cls.methods:
        names.update(m.return_type.resolved_simple_names)
        for p in m.params:
            names.update(p.resolved_simple_names)
        names.update(e.name for e in m.body_type_evidence)
    return names


def build_codebase(files: Iterable[tuple[str, str]]) -> CodebaseModel:
    """Parse every ``(path, source)`` pair and merge the result.

    Files are processed in lexicographic path order. A file that fails to lex
    or parse is reported as a warning and contributes nothing.
    """
    files = sorted(files, key=lambda pair: pair[0])
    diagnostics: list[Diagnostic] = []
    classes: dict[str, ClassModel] = {}
    for path, source in files:
        local: list[Diagnostic] = []
        try:
            models = parse_source(source, path, local)
        except LexicalError as exc:
            diagnostics.append(Diagnostic("warning", path, exc.line, f"file skipped: {exc.args[0]}"))
            continue
        except ParseError as exc:
            diagnostics.append(Diagnostic("warning", path, exc.line, f"file skipped: {exc.args[0]}"))
            continue
        diagnostics.extend(local)
        for model in models:
            if model.qualified_name in classes:
                first = classes[model.qualified_name]
                diagnostics.append(
                    Diagnostic(
                        "warning", path, model.line,
                        f"duplicate class {model.qualified_name} dropped "
                        f"(first declared in {first.source_file}:{first.line})",
                    )
                )
                continue
            classes[model.qualified_name] = model
    if not classes:
        raise EmptyCodebaseError("no parsable class or interface declarations found")

    index: dict[str, list[str]] = {}
    for qname, model in classes.items():
        index.setdefault(model.simple_name, []).append(qname)
    known = frozenset(index)

    def keep_known(m: MethodSig) -> MethodSig:
        kept = tuple(e for e in m.body_type_evidence if e.name in known)
        return m if kept == m.body_type_evidence else dataclasses.replace(m, body_type_evidence=kept)

    merged = tuple(
        dataclasses.replace(c, methods=tuple(keep_known(m) for m in c.methods))
        for c in classes.values()
    )

    referenced: set[str] = set()
    for c in merged:
        referenced |= _referenced_names(c)
    for simple in sorted(index):
        if len(index[simple]) > 1 and simple in referenced:
            diagnostics.append(
                Diagnostic(
                    "info", GLOBAL, 0,
                    f"simple name {simple} is ambiguous; references attach to all of "
                    + ", ".join(sorted(index[simple])),
                )
            )

    return CodebaseModel(
        classes=merged,
        simple_name_index={k: tuple(sorted(v)) for k, v in sorted(index.items())},
        diagnostics=tuple(diagnostics),
        file_count=len(files),
    )
