"""A small expression language for refractive-index profiles.

Grammar (whitespace insignificant)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-'? atom ('^' power)?
    power  := INT | '(' '-'? INT ('/' INT)? ')'      # parenthesised form: rational mode only
    atom   := NUMBER | 'i' | VAR | FUNC '(' expr ')' | '(' expr ')'

Variables are ``r``, ``theta`` (alias ``θ``), ``x`` and ``y``; functions are
``sin cos exp sqrt abs``. Evaluation is vectorised over numpy arrays.

>>> ast = parse_expression("2+r*(sin(theta)-cos(theta))")
>>> complex(evaluate(ast, r=1.0, theta=0.0))
(1+0j)
"""

from dataclasses import dataclass
from fractions import Fraction
import re

import numpy as np

from .errors import ExpressionError

__all__ = [
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Pow",
    "Call",
    "parse_expression",
    "evaluate",
    "to_text",
    "is_constant",
]

MAX_LENGTH = 4096
VARIABLES = ("r", "theta", "x", "y")
FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "sqrt": np.sqrt,
    "abs": np.abs,
}
DIV_EPS = 1e-14


@dataclass(frozen=True)
class Num:
    value: complex


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: Fraction


@dataclass(frozen=True)
class Call:
    func: str
    arg: object


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_θ][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExpressionError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _byte_offset(text, pos):
    return len(text[:pos].encode("utf-8")) + 1


class _Parser:
    def __init__(self, text, rational_powers):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.rational_powers = rational_powers

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ExpressionError(f"{message}, found {what}", _byte_offset(self.text, tok[2]))

    def expect(self, value):
        tok = self.peek()
        if tok[1] != value or tok[0] == "end":
            self.fail(f"expected {value!r}")
        return self.advance()

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.advance()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        negate = False
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.advance()
            negate = True
        node = self.atom()
        if self.peek()[1] == "^":
            self.advance()
            node = Pow(node, self.power())
        return Neg(node) if negate else node

    def _int(self):
        tok = self.peek()
        if tok[0] != "num" or not tok[1].isdigit():
            self.fail("expected an integer exponent")
        self.advance()
        return int(tok[1])

    def power(self):
        tok = self.peek()
        if tok[1] == "(" and tok[0] == "op":
            if not self.rational_powers:
                self.fail("parenthesised exponents are only allowed in boundary-curve expressions")
            self.advance()
            sign = 1
            if self.peek()[1] == "-":
                self.advance()
                sign = -1
            num = self._int()
            den = 1
            if self.peek()[1] == "/":
                self.advance()
                den_tok = self.peek()
                den = self._int()
                if den == 0:
                    self.fail("zero denominator in exponent", den_tok)
            self.expect(")")
            return Fraction(sign * num, den)
        return Fraction(self._int())

    def atom(self):
        tok = self.peek()
        kind, value = tok[0], tok[1]
        if kind == "num":
            self.advance()
            return Num(complex(float(value)))
        if kind == "name":
            self.advance()
            if value == "i":
                return Num(1j)
            if value == "θ":
                value = "theta"
            if value in VARIABLES:
                return Var(value)
            if value in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(value, arg)
            raise ExpressionError(f"unknown identifier {value!r}", _byte_offset(self.text, tok[2]))
        if value == "(" and kind == "op":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.fail("expected a number, variable, function or '('")


def parse_expression(text, rational_powers=False):
    """Parse ``text`` into an expression tree.

    ``rational_powers`` enables exponents of the form ``^(-1/5)``, needed for
    boundary curves such as the rounded square.
    """
    if len(text) > MAX_LENGTH:
        raise ExpressionError(f"expression longer than {MAX_LENGTH} characters")
    if not text.strip():
        raise ExpressionError("empty expression", 1)
    return _Parser(text, rational_powers).parse()


def _simplify_real(value):
    value = np.asarray(value)
    if np.iscomplexobj(value) and not np.any(value.imag):
        return value.real
    return value


def evaluate(node, r=0.0, theta=0.0):
    """Evaluate ``node`` at polar points; ``x``/``y`` are derived from them.

    Returns a real array when no complex literal is involved, complex
    otherwise.
    """
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    env = {"r": r, "theta": theta}
    return _simplify_real(_eval(node, env))


def _eval(node, env):
    if isinstance(node, Num):
        v = node.value
        return v.real if v.imag == 0 else v
    if isinstance(node, Var):
        if node.name == "x":
            return env["r"] * np.cos(env["theta"])
        if node.name == "y":
            return env["r"] * np.sin(env["theta"])
        return env[node.name]
    if isinstance(node, Neg):
        return -_eval(node.operand, env)
    if isinstance(node, BinOp):
        a = _eval(node.left, env)
        b = _eval(node.right, env)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if np.any(np.abs(b) < DIV_EPS):
            raise ExpressionError("division by a value of modulus < 1e-14")
        return a / b
    if isinstance(node, Pow):
        base = _eval(node.base, env)
        e = node.exponent
        if e.denominator == 1:
            if e < 0 and np.any(np.abs(base) < DIV_EPS):
                raise ExpressionError("negative power of a value of modulus < 1e-14")
            return base ** int(e) if e >= 0 else 1.0 / base ** int(-e)
        if np.any(np.abs(base) < DIV_EPS) and e < 0:
            raise ExpressionError("negative power of a value of modulus < 1e-14")
        if not np.iscomplexobj(base) and np.any(np.asarray(base) < 0):
            base = np.asarray(base, dtype=complex)
        return np.power(base, float(e))
    if isinstance(node, Call):
        arg = _eval(node.arg, env)
        if node.func == "sqrt" and not np.iscomplexobj(arg) and np.any(np.asarray(arg) < 0):
            arg = np.asarray(arg, dtype=complex)
        return FUNCTIONS[node.func](arg)
    raise TypeError(f"not an expression node: {node!r}")


def to_text(node):
    """Pretty-print a tree; the result parses back to an identical tree
    (with ``rational_powers`` enabled when fractional exponents occur)."""
    if isinstance(node, Num):
        v = node.value
        if v == 1j:
            return "i"
        if v.imag != 0:
            raise ValueError(f"literal {v} has no single-atom spelling")
        return repr(float(v.real))
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"-{_wrap(node.operand)}"
    if isinstance(node, BinOp):
        return f"({to_text(node.left)}{node.op}{to_text(node.right)})"
    if isinstance(node, Pow):
        e = node.exponent
        exp_txt = str(e.numerator) if (e.denominator == 1 and e >= 0) else f"({e.numerator}/{e.denominator})"
        return f"{_wrap(node.base)}^{exp_txt}"
    if isinstance(node, Call):
        return f"{node.func}({to_text(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")


def _wrap(node):
    txt = to_text(node)
    if isinstance(node, (Num, Var, Call, BinOp)):
        return txt
    return f"({txt})"


def is_constant(node):
    """True when the tree contains no variables."""
    if isinstance(node, Num):
        return True
    if isinstance(node, Var):
        return False
    if isinstance(node, Neg):
        return is_constant(node.operand)
    if isinstance(node, BinOp):
        return is_constant(node.left) and is_constant(node.right)
    if isinstance(node, Pow):
        return is_constant(node.base)
    if isinstance(node, Call):
        return is_constant(node.arg)
    raise TypeError(f"not an expression node: {node!r}")
