"""
Textual expression syntax.

    expr    := ['-'] term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := INT | VAR | app ['^' INT] | '(' app [('+'|'-') [INT '*'] VAR] ')' ['^' INT]
    app     := MAP '(' VAR ')'

Each map name is bound to one variable (`a(x)`, `b(y)`); a bare variable may
only appear alone in a term (the μ·x part). Example:

    (a(x)+x)*(b(y)) + 2*a(x) + 3*x
"""

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..core.exceptions import ExpressionParseError
from .canonical import canonicalize
from .model import Atom, Expression, Linear, Term

VAR_NAMES = ('x', 'y', 'z', 'w', 'u', 'v')
MAP_NAMES = ('a', 'b', 'c', 'd', 'e', 'f')

TOKEN_RE = re.compile(r'\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[()+\-*^]))')


@dataclass
class Token:
    kind: str  # 'int', 'name', 'op', 'end'
    text: str
    offset: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = TOKEN_RE.match(text, pos)
        if not m:
            raise ExpressionParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(Token('int', m.group(1), start))
        elif m.group(2):
            tokens.append(Token('name', m.group(2), start))
        else:
            op = '^' if m.group(3) == '**' else m.group(3)
            tokens.append(Token('op', op, start))
        pos = m.end()
    tokens.append(Token('end', '', len(text)))
    return tokens


class _Parser:
    """Recursive descent over the token list."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.var_ids: Dict[str, int] = {}
        self.map_of_var: Dict[str, str] = {}
        self.var_of_map: Dict[str, str] = {}

    # -- token helpers --
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, token: Optional[Token] = None):
        token = token or self.tok
        raise ExpressionParseError(message, token.offset, self.text)

    def accept(self, op: str) -> bool:
        if self.tok.kind == 'op' and self.tok.text == op:
            self.i += 1
            return True
        return False

    def expect(self, op: str) -> Token:
        if not self.accept(op):
            self.error(f"expected {op!r}")
        return self.tokens[self.i - 1]

    def var_id(self, name: str) -> int:
        return self.var_ids.setdefault(name, len(self.var_ids))

    def bind(self, map_name: str, var_name: str, token: Token) -> None:
        if self.var_of_map.setdefault(map_name, var_name) != var_name:
            self.error(f"map {map_name} applied to two variables", token)
        if self.map_of_var.setdefault(var_name, map_name) != map_name:
            self.error(f"variable {var_name} used with two maps", token)

    # -- grammar --
    def parse(self) -> Expression:
        terms: List[Term] = []
        linear: List[Linear] = []
        sign = -1 if self.accept('-') else 1
        self.term(sign, terms, linear)
        while self.tok.kind == 'op' and self.tok.text in '+-':
            sign = 1 if self.tok.text == '+' else -1
            self.i += 1
            self.term(sign, terms, linear)
        if self.tok.kind != 'end':
            self.error(f"unexpected {self.tok.text!r}")
        return Expression(tuple(terms), tuple(linear))

    def app(self) -> Tuple[str, Token]:
        """MAP '(' VAR ')' returning the variable name."""
        map_tok = self.tok
        self.i += 1
        self.expect('(')
        if self.tok.kind != 'name':
            self.error("expected a variable name")
        var_tok = self.tok
        self.i += 1
        self.expect(')')
        self.bind(map_tok.text, var_tok.text, map_tok)
        return var_tok.text, var_tok

    def power(self) -> int:
        if self.accept('^'):
            if self.tok.kind != 'int':
                self.error("expected an integer exponent")
            exponent = int(self.tok.text)
            self.i += 1
            if exponent < 1:
                self.error("exponent must be positive", self.tokens[self.i - 1])
            return exponent
        return 1

    def term(self, sign: int, terms: List[Term], linear: List[Linear]) -> None:
        coeff = sign
        atoms: List[Atom] = []
        bare: Optional[Token] = None
        while True:
            tok = self.tok
            if tok.kind == 'int':
                coeff *= int(tok.text)
                self.i += 1
            elif tok.kind == 'name' and self.tokens[self.i + 1].text == '(':
                var_name, _ = self.app()
                atoms.extend([Atom(self.var_id(var_name), 0)] * self.power())
            elif tok.kind == 'name':
                if bare is not None:
                    self.error("a bare variable must stand alone in its term", tok)
                bare = tok
                self.i += 1
            elif self.accept('('):
                atom = self.shifted_atom()
                self.expect(')')
                atoms.extend([atom] * self.power())
            else:
                self.error("expected a factor")
            if not self.accept('*'):
                break

        if bare is not None:
            if atoms:
                self.error("a bare variable must stand alone in its term", bare)
            linear.append(Linear(self.var_id(bare.text), 0, coeff))
        elif not atoms:
            self.error("constant terms are not part of the expression language", tok)
        elif len(atoms) == 1:
            atom = atoms[0]
            linear.append(Linear(atom.var, coeff, coeff * atom.shift))
        else:
            terms.append(Term(coeff, tuple(atoms)))

    def shifted_atom(self) -> Atom:
        """Inside parentheses: app [('+'|'-') [INT '*'] VAR]."""
        if self.tok.kind != 'name':
            self.error("expected a map application")
        var_name, _ = self.app()
        shift = 0
        if self.tok.kind == 'op' and self.tok.text in '+-':
            sign = 1 if self.tok.text == '+' else -1
            self.i += 1
            scale = 1
            if self.tok.kind == 'int':
                scale = int(self.tok.text)
                self.i += 1
                self.expect('*')
            if self.tok.kind != 'name' or self.tok.text != var_name:
                self.error(f"shift must use the map's own variable {var_name}")
            self.i += 1
            shift = sign * scale
        return Atom(self.var_id(var_name), shift)


def parse_expression(text: str) -> Expression:
    """
    Parse expression text into its canonical form.

    Raises:
        ExpressionParseError: With the character offset of the problem
    """
    if not text or not text.strip():
        raise ExpressionParseError("empty expression", 0, text or '')
    return canonicalize(_Parser(text).parse())


def _var_name(v: int) -> str:
    return VAR_NAMES[v] if v < len(VAR_NAMES) else f'x{v}'


def _map_name(v: int) -> str:
    return MAP_NAMES[v] if v < len(MAP_NAMES) else f'm{v}'


def _atom_text(atom: Atom) -> str:
    app = f"{_map_name(atom.var)}({_var_name(atom.var)})"
    if atom.shift == 0:
        return app
    sign = '+' if atom.shift > 0 else '-'
    scale = '' if abs(atom.shift) == 1 else f"{abs(atom.shift)}*"
    return f"({app}{sign}{scale}{_var_name(atom.var)})"


def format_expression(expr: Expression) -> str:
    """Inverse of parse_expression on canonical forms."""
    pieces: List[Tuple[int, str]] = []
    for t in expr.terms:
        body = '*'.join(_atom_text(a) for a in t.factors)
        pieces.append((t.coeff, body))
    for lin in expr.linear:
        app = f"{_map_name(lin.var)}({_var_name(lin.var)})"
        if lin.lam:
            pieces.append((lin.lam, app))
        if lin.mu:
            pieces.append((lin.mu, _var_name(lin.var)))
    if not pieces:
        return '0'

    out = []
    for idx, (coeff, body) in enumerate(pieces):
        magnitude = abs(coeff)
        text = body if magnitude == 1 else f"{magnitude}*{body}"
        if idx == 0:
            out.append(text if coeff > 0 else f"-{text}")
        else:
            out.append(f" + {text}" if coeff > 0 else f" - {text}")
    return ''.join(out)
