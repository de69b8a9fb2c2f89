"""Session scripts: tokenizer, parser, AST and pretty printer.

Grammar (statements end with ';', '#' starts a line comment):

    ring <id> = QQ | QQ[t] ;
    ring <id> = <base_id>[<ident>, ...] ;
    module <id> = coker [[poly, ...], ...] (twists=<int>,...)? ;
    compute localcoh <id> i=<a>..<b> (window=<a>..<b>)? (oracle)? ;
    compute ext <id> j=<int> (window=<a>..<b>)? ;
    check duality <id> (window=<a>..<b>)? ;
    check basechange <id> at <c>, ... (i=<a>..<b>)? (window=<a>..<b>)? ;
    check dualexact <id> <id> <id> f=[[poly,...],...] g=[[poly,...],...]
        (window=<a>..<b>)? ;
    find witness <id> (window=<a>..<b>)? ;

Polynomials are infix with integer and t coefficients: '+', '-', '*', '^',
parentheses.  Matrix literals are rows of polynomials; rows are ambient
generators, columns are relations (or map columns for dualexact).  Every
identifier must be declared before use; exactly one base ring and one
polynomial ring are active per session.  Parsing also validates the
x-homogeneity of every matrix entry against the declared twists and
reports the offending cell.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .elements import Element, poly_mul
from .rings import QQ, QQT, Ring

KEYWORDS = {
    "ring", "module", "compute", "check", "find", "coker", "twists",
    "localcoh", "ext", "duality", "basechange", "dualexact", "witness",
    "oracle", "window", "at", "QQ", "i", "j", "f", "g",
}


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = "" if line is None else " at line %d, column %d" % (line, col)
        super().__init__(message + where)


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<comment>#[^\n]*)"
    r"|(?P<int>\d+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<dots>\.\.)"
    r"|(?P<sym>[=;,\[\]()*+\-^/])"
)


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return "Token(%s, %r, %d:%d)" % (self.kind, self.text, self.line, self.col)


def tokenize(text: str):
    tokens = []
    line = 1
    line_start = 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            col = pos - line_start + 1
            raise ParseError("unexpected character %r" % text[pos], line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind in ("ws", "comment"):
            newlines = chunk.count("\n")
            if newlines:
                line += newlines
                line_start = pos + chunk.rfind("\n") + 1
        else:
            tokens.append(Token(kind, chunk, line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, len(text) - line_start + 1))
    return tokens


# ---------------------------------------------------------------- AST nodes

class Statement:
    __slots__ = ("line", "col")

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __repr__(self):
        return "%s%r" % (type(self).__name__, self._key())


class BaseRingDecl(Statement):
    __slots__ = ("name", "kind")

    def __init__(self, name, kind, line=0, col=0):
        self.name, self.kind = name, kind
        self.line, self.col = line, col

    def _key(self):
        return (self.name, self.kind)

    def pretty(self):
        return "ring %s = %s;" % (self.name, self.kind)


class PolyRingDecl(Statement):
    __slots__ = ("name", "base_name", "xvars", "ring")

    def __init__(self, name, base_name, xvars, ring, line=0, col=0):
        self.name, self.base_name, self.xvars = name, base_name, tuple(xvars)
        self.ring = ring
        self.line, self.col = line, col

    def _key(self):
        return (self.name, self.base_name, self.xvars)

    def pretty(self):
        return "ring %s = %s[%s];" % (self.name, self.base_name,
                                      ",".join(self.xvars))


class ModuleDecl(Statement):
    __slots__ = ("name", "rows", "twists")

    def __init__(self, name, rows, twists, line=0, col=0):
        self.name = name
        self.rows = [list(r) for r in rows]
        self.twists = tuple(twists)
        self.line, self.col = line, col

    def _key(self):
        return (self.name, tuple(tuple(r) for r in self.rows), self.twists)

    def pretty(self):
        mat = _matrix_str(self.rows)
        tw = ""
        if any(self.twists):
            tw = " twists=%s" % ",".join(str(t) for t in self.twists)
        return "module %s = coker %s%s;" % (self.name, mat, tw)


class LocalcohCmd(Statement):
    __slots__ = ("target", "i_range", "window", "oracle")

    def __init__(self, target, i_range, window, oracle, line=0, col=0):
        self.target, self.i_range, self.window, self.oracle = \
            target, i_range, window, oracle
        self.line, self.col = line, col

    def _key(self):
        return (self.target, self.i_range, self.window, self.oracle)

    def pretty(self):
        out = "compute localcoh %s i=%d..%d" % (self.target, *self.i_range)
        if self.window is not None:
            out += " window=%d..%d" % self.window
        if self.oracle:
            out += " oracle"
        return out + ";"


class ExtCmd(Statement):
    __slots__ = ("target", "j", "window")

    def __init__(self, target, j, window, line=0, col=0):
        self.target, self.j, self.window = target, j, window
        self.line, self.col = line, col

    def _key(self):
        return (self.target, self.j, self.window)

    def pretty(self):
        out = "compute ext %s j=%d" % (self.target, self.j)
        if self.window is not None:
            out += " window=%d..%d" % self.window
        return out + ";"


class DualityCmd(Statement):
    __slots__ = ("target", "window")

    def __init__(self, target, window, line=0, col=0):
        self.target, self.window = target, window
        self.line, self.col = line, col

    def _key(self):
        return (self.target, self.window)

    def pretty(self):
        out = "check duality %s" % self.target
        if self.window is not None:
            out += " window=%d..%d" % self.window
        return out + ";"


class BasechangeCmd(Statement):
    __slots__ = ("target", "points", "i_range", "window")

    def __init__(self, target, points, i_range, window, line=0, col=0):
        self.target, self.points = target, tuple(points)
        self.i_range, self.window = i_range, window
        self.line, self.col = line, col

    def _key(self):
        return (self.target, self.points, self.i_range, self.window)

    def pretty(self):
        out = "check basechange %s at %s" % (
            self.target, ",".join(_frac_str(c) for c in self.points))
        if self.i_range is not None:
            out += " i=%d..%d" % self.i_range
        if self.window is not None:
            out += " window=%d..%d" % self.window
        return out + ";"


class DualexactCmd(Statement):
    __slots__ = ("first", "second", "third", "f_rows", "g_rows", "window")

    def __init__(self, first, second, third, f_rows, g_rows, window,
                 line=0, col=0):
        self.first, self.second, self.third = first, second, third
        self.f_rows = [list(r) for r in f_rows]
        self.g_rows = [list(r) for r in g_rows]
        self.window = window
        self.line, self.col = line, col

    def _key(self):
        return (self.first, self.second, self.third,
                tuple(tuple(r) for r in self.f_rows),
                tuple(tuple(r) for r in self.g_rows), self.window)

    def pretty(self):
        out = "check dualexact %s %s %s f=%s g=%s" % (
            self.first, self.second, self.third,
            _matrix_str(self.f_rows), _matrix_str(self.g_rows))
        if self.window is not None:
            out += " window=%d..%d" % self.window
        return out + ";"


class WitnessCmd(Statement):
    __slots__ = ("target", "window")

    def __init__(self, target, window, line=0, col=0):
        self.target, self.window = target, window
        self.line, self.col = line, col

    def _key(self):
        return (self.target, self.window)

    def pretty(self):
        out = "find witness %s" % self.target
        if self.window is not None:
            out += " window=%d..%d" % self.window
        return out + ";"


class Session:
    __slots__ = ("statements", "base_name", "base_kind", "ring_name", "ring",
                 "modules")

    def __init__(self, statements, base_name, base_kind, ring_name, ring,
                 modules):
        self.statements = statements
        self.base_name = base_name
        self.base_kind = base_kind
        self.ring_name = ring_name
        self.ring = ring
        self.modules = modules    # name -> (rows, twists)

    def __eq__(self, other):
        return (isinstance(other, Session)
                and self.statements == other.statements)

    def pretty(self) -> str:
        return "\n".join(s.pretty() for s in self.statements) + (
            "\n" if self.statements else "")


def _matrix_str(rows) -> str:
    return "[%s]" % ",".join(
        "[%s]" % ",".join(el.poly_str() for el in row) for row in rows
    )


def _frac_str(c: Fraction) -> str:
    return str(c)


# ------------------------------------------------------------------- parser

class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0
        self.base_name = None
        self.base_kind = None
        self.ring_name = None
        self.ring = None
        self.modules = {}

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def expect(self, kind, text=None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            self.fail("expected %r, found %r" % (want, tok.text or "end of input"))
        return self.advance()

    def accept(self, kind, text=None):
        tok = self.peek()
        if tok.kind == kind and (text is None or tok.text == text):
            return self.advance()
        return None

    # statements ----------------------------------------------------------

    def parse_session(self) -> Session:
        statements = []
        while self.peek().kind != "eof":
            statements.append(self.statement())
        return Session(statements, self.base_name, self.base_kind,
                       self.ring_name, self.ring, self.modules)

    def statement(self) -> Statement:
        tok = self.peek()
        if tok.kind != "ident":
            self.fail("expected a statement keyword")
        if tok.text == "ring":
            return self.ring_decl()
        if tok.text == "module":
            return self.module_decl()
        if tok.text == "compute":
            return self.compute_cmd()
        if tok.text == "check":
            return self.check_cmd()
        if tok.text == "find":
            return self.find_cmd()
        self.fail("unknown statement %r" % tok.text)

    def _declare(self, name_tok: Token):
        name = name_tok.text
        if name in KEYWORDS:
            self.fail("%r is a reserved word" % name, name_tok)
        if name in self.modules or name in (self.base_name, self.ring_name):
            self.fail("identifier %r already declared" % name, name_tok)
        return name

    def ring_decl(self) -> Statement:
        start = self.expect("ident", "ring")
        name_tok = self.expect("ident")
        self.expect("sym", "=")
        tok = self.peek()
        if tok.kind == "ident" and tok.text == "QQ":
            name = self._declare(name_tok)
            if self.base_name is not None:
                self.fail("base ring already declared", start)
            self.advance()
            kind = QQ
            if self.accept("sym", "["):
                self.expect("ident", "t")
                self.expect("sym", "]")
                kind = QQT
            self.expect("sym", ";")
            self.base_name, self.base_kind = name, kind
            return BaseRingDecl(name, kind, start.line, start.col)
        if tok.kind == "ident" and tok.text == self.base_name:
            name = self._declare(name_tok)
            if self.ring_name is not None:
                self.fail("polynomial ring already declared", start)
            self.advance()
            self.expect("sym", "[")
            xvars = [self.var_name()]
            while self.accept("sym", ","):
                xvars.append(self.var_name())
            self.expect("sym", "]")
            self.expect("sym", ";")
            self.ring_name = name
            self.ring = Ring(self.base_kind, xvars)
            return PolyRingDecl(name, self.base_name, xvars, self.ring,
                                start.line, start.col)
        self.fail("undefined base ring %r" % tok.text, tok)

    def var_name(self) -> str:
        tok = self.expect("ident")
        if tok.text in KEYWORDS or tok.text == "t":
            self.fail("%r cannot be a variable name" % tok.text, tok)
        return tok.text

    def module_decl(self) -> Statement:
        start = self.expect("ident", "module")
        name_tok = self.expect("ident")
        name = self._declare(name_tok)
        self.expect("sym", "=")
        self.expect("ident", "coker")
        if self.ring is None:
            self.fail("no polynomial ring declared", start)
        rows, cells = self.matrix_literal()
        twists = [0] * len(rows)
        if self.accept("ident", "twists"):
            self.expect("sym", "=")
            twists = [self.integer()]
            while self.accept("sym", ","):
                twists.append(self.integer())
            if len(twists) != len(rows):
                self.fail("twists count %d does not match %d rows"
                          % (len(twists), len(rows)), start)
        self.expect("sym", ";")
        self._check_matrix_homogeneity(rows, cells, twists)
        self.modules[name] = (rows, tuple(twists))
        return ModuleDecl(name, rows, twists, start.line, start.col)

    def _check_matrix_homogeneity(self, rows, cells, twists):
        """Each entry homogeneous; within a column, degree + row twist constant."""
        if not rows:
            return
        ncols = len(rows[0])
        for j in range(ncols):
            col_deg = None
            for i, row in enumerate(rows):
                entry = row[j]
                tok = cells[i][j]
                if not entry.is_homogeneous():
                    raise ParseError(
                        "relation entry not x-homogeneous (row %d, column %d)"
                        % (i + 1, j + 1), tok.line, tok.col)
                deg = entry.xdegree()
                if deg is None:
                    continue
                total = deg + twists[i]
                if col_deg is None:
                    col_deg = total
                elif col_deg != total:
                    raise ParseError(
                        "relation entry not x-homogeneous (row %d, column %d)"
                        % (i + 1, j + 1), tok.line, tok.col)

    def matrix_literal(self):
        self.expect("sym", "[")
        rows = []
        cells = []
        while True:
            self.expect("sym", "[")
            row = []
            row_cells = []
            if not self.accept("sym", "]"):
                while True:
                    row_cells.append(self.peek())
                    row.append(self.poly())
                    if self.accept("sym", ","):
                        continue
                    self.expect("sym", "]")
                    break
            rows.append(row)
            cells.append(row_cells)
            if self.accept("sym", ","):
                continue
            self.expect("sym", "]")
            break
        width = {len(r) for r in rows}
        if len(width) > 1:
            self.fail("ragged matrix literal")
        return rows, cells

    # polynomial expressions ----------------------------------------------

    def poly(self) -> Element:
        negative = bool(self.accept("sym", "-"))
        acc = self.term()
        if negative:
            acc = -acc
        while True:
            if self.accept("sym", "+"):
                acc = acc + self.term()
            elif self.accept("sym", "-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> Element:
        acc = self.factor()
        while self.accept("sym", "*"):
            acc = poly_mul(acc, self.factor())
        return acc

    def factor(self) -> Element:
        base = self.atom()
        if self.accept("sym", "^"):
            tok = self.expect("int")
            power = int(tok.text)
            out = Element.poly(self.ring, {self.ring.zero_mono(): 1})
            for _ in range(power):
                out = poly_mul(out, base)
            return out
        return base

    def atom(self) -> Element:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            return Element.poly(self.ring, {self.ring.zero_mono(): int(tok.text)})
        if tok.kind == "sym" and tok.text == "(":
            self.advance()
            inner = self.poly()
            self.expect("sym", ")")
            return inner
        if tok.kind == "ident":
            name = tok.text
            if name == "t":
                if not self.ring.has_t:
                    self.fail("undefined identifier 't' (base ring is QQ)", tok)
                self.advance()
                return Element.variable(self.ring, "t")
            if name in self.ring.xvars:
                self.advance()
                return Element.variable(self.ring, name)
            self.fail("undefined identifier %r" % name, tok)
        self.fail("expected a polynomial")

    # commands --------------------------------------------------------------

    def module_ref(self) -> str:
        tok = self.expect("ident")
        if tok.text not in self.modules:
            self.fail("undefined identifier %r" % tok.text, tok)
        return tok.text

    def integer(self) -> int:
        sign = -1 if self.accept("sym", "-") else 1
        tok = self.expect("int")
        return sign * int(tok.text)

    def rational(self) -> Fraction:
        sign = -1 if self.accept("sym", "-") else 1
        tok = self.expect("int")
        num = int(tok.text)
        if self.accept("sym", "/"):
            den = int(self.expect("int").text)
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    def int_range(self):
        lo = self.integer()
        self.expect("dots")
        hi = self.integer()
        return (lo, hi)

    def opt_window(self):
        if self.accept("ident", "window"):
            self.expect("sym", "=")
            return self.int_range()
        return None

    def compute_cmd(self) -> Statement:
        start = self.expect("ident", "compute")
        kind = self.expect("ident")
        if kind.text == "localcoh":
            target = self.module_ref()
            self.expect("ident", "i")
            self.expect("sym", "=")
            i_range = self.int_range()
            window = self.opt_window()
            oracle = bool(self.accept("ident", "oracle"))
            if window is None:
                window = self.opt_window()
            self.expect("sym", ";")
            return LocalcohCmd(target, i_range, window, oracle,
                               start.line, start.col)
        if kind.text == "ext":
            target = self.module_ref()
            self.expect("ident", "j")
            self.expect("sym", "=")
            j = self.integer()
            window = self.opt_window()
            self.expect("sym", ";")
            return ExtCmd(target, j, window, start.line, start.col)
        self.fail("unknown compute command %r" % kind.text, kind)

    def check_cmd(self) -> Statement:
        start = self.expect("ident", "check")
        kind = self.expect("ident")
        if kind.text == "duality":
            target = self.module_ref()
            window = self.opt_window()
            self.expect("sym", ";")
            return DualityCmd(target, window, start.line, start.col)
        if kind.text == "basechange":
            target = self.module_ref()
            self.expect("ident", "at")
            points = [self.rational()]
            while self.accept("sym", ","):
                points.append(self.rational())
            i_range = None
            if self.accept("ident", "i"):
                self.expect("sym", "=")
                i_range = self.int_range()
            window = self.opt_window()
            self.expect("sym", ";")
            return BasechangeCmd(target, points, i_range, window,
                                 start.line, start.col)
        if kind.text == "dualexact":
            first = self.module_ref()
            second = self.module_ref()
            third = self.module_ref()
            self.expect("ident", "f")
            self.expect("sym", "=")
            f_rows, _ = self.matrix_literal()
            self.expect("ident", "g")
            self.expect("sym", "=")
            g_rows, _ = self.matrix_literal()
            window = self.opt_window()
            self.expect("sym", ";")
            return DualexactCmd(first, second, third, f_rows, g_rows,
                                window, start.line, start.col)
        self.fail("unknown check command %r" % kind.text, kind)

    def find_cmd(self) -> Statement:
        start = self.expect("ident", "find")
        self.expect("ident", "witness")
        target = self.module_ref()
        window = self.opt_window()
        self.expect("sym", ";")
        return WitnessCmd(target, window, start.line, start.col)


def parse_session(text: str) -> Session:
    """Parse and validate a session script."""
    return _Parser(tokenize(text)).parse_session()
