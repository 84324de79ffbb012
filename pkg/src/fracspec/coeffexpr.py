"""Tiny arithmetic expressions for coefficient functions.

Config files carry k(x), b(x), c(x), f(x) as strings like "exp(x)" or
"piecewise(0.5; 2; 1)".  This module parses them into immutable ASTs that
evaluate on scalars or numpy arrays and can report their jump locations so
quadrature can split at them.

Grammar (whitespace insignificant):

    expr    := term (('+'|'-') term)*
    term    := factor (('*'|'/') factor)*
    factor  := '-' factor | primary ('^' factor)?
    primary := number | 'x' | ident '(' args ')' | '(' expr ')'

'^' is right-associative and binds tighter than unary minus, so "-x^2"
means -(x^2).  Functions: sin, cos, exp, log, sqrt, abs, and
piecewise(x0; left; right), which selects left for x < x0 and right for
x >= x0.  The breakpoint x0 must be a constant expression.
"""

from __future__ import annotations

import math

import numpy as np

_FUNCS = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "abs": np.abs,
}

_MAX_DEPTH = 400


class ParseError(ValueError):
    """Syntax or arity problem, carrying the byte offset into the source."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class EvalError(ValueError):
    """Domain failure during evaluation, naming the offending subexpression."""


class Expr:
    """Parsed expression node.  Calling it evaluates at scalar or array x."""

    def eval(self, x: float) -> float:
        return float(self(np.asarray([x], dtype=float))[0])

    def __call__(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def breakpoints(self) -> list[float]:
        """Sorted distinct piecewise breakpoints lying strictly inside (0,1)."""
        out = set()
        self._collect_breaks(out)
        return sorted(b for b in out if 0.0 < b < 1.0)

    def _collect_breaks(self, out: set):
        pass

    def pretty(self) -> str:
        return self._fmt(0)

    def _fmt(self, ctx: int) -> str:
        raise NotImplementedError


def _wrap(s: str, prec: int, ctx: int) -> str:
    return f"({s})" if prec < ctx else s


class Num(Expr):
    __slots__ = ("value",)

    def __init__(self, value: float):
        self.value = value

    def __call__(self, x):
        return np.full(np.shape(x), self.value)

    def _fmt(self, ctx):
        return repr(self.value)


class Var(Expr):
    def __call__(self, x):
        return np.asarray(x, dtype=float)

    def _fmt(self, ctx):
        return "x"


class Neg(Expr):
    __slots__ = ("child",)

    def __init__(self, child: Expr):
        self.child = child

    def __call__(self, x):
        return -self.child(x)

    def _collect_breaks(self, out):
        self.child._collect_breaks(out)

    def _fmt(self, ctx):
        return _wrap("-" + self.child._fmt(3), 3, ctx)


class BinOp(Expr):
    __slots__ = ("op", "left", "right")

    _PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}

    def __init__(self, op: str, left: Expr, right: Expr):
        self.op = op
        self.left = left
        self.right = right

    def __call__(self, x):
        a = self.left(x)
        b = self.right(x)
        try:
            # gradual underflow is harmless; the true hazards raise
            with np.errstate(divide="raise", invalid="raise", over="raise", under="ignore"):
                if self.op == "+":
                    v = a + b
                elif self.op == "-":
                    v = a - b
                elif self.op == "*":
                    v = a * b
                elif self.op == "/":
                    v = a / b
                else:
                    v = np.power(a, b)
        except FloatingPointError as exc:
            raise EvalError(f"domain error evaluating '{self.pretty()}': {exc}") from None
        if not np.all(np.isfinite(v)):
            raise EvalError(f"non-finite value from '{self.pretty()}'")
        return v

    def _collect_breaks(self, out):
        self.left._collect_breaks(out)
        self.right._collect_breaks(out)

    def _fmt(self, ctx):
        p = self._PREC[self.op]
        if self.op == "^":
            s = self.left._fmt(5) + "^" + self.right._fmt(p)
        else:
            s = self.left._fmt(p) + self.op + self.right._fmt(p + 1)
        return _wrap(s, p, ctx)


class Call(Expr):
    __slots__ = ("name", "arg")

    def __init__(self, name: str, arg: Expr):
        self.name = name
        self.arg = arg

    def __call__(self, x):
        v = self.arg(x)
        try:
            with np.errstate(divide="raise", invalid="raise", over="raise", under="ignore"):
                out = _FUNCS[self.name](v)
        except FloatingPointError as exc:
            raise EvalError(f"domain error evaluating '{self.pretty()}': {exc}") from None
        if not np.all(np.isfinite(out)):
            raise EvalError(f"non-finite value from '{self.pretty()}'")
        return out

    def _collect_breaks(self, out):
        self.arg._collect_breaks(out)

    def _fmt(self, ctx):
        return f"{self.name}({self.arg._fmt(0)})"


class Piecewise(Expr):
    __slots__ = ("x0", "left", "right")

    def __init__(self, x0: float, left: Expr, right: Expr):
        self.x0 = x0
        self.left = left
        self.right = right

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.empty(x.shape)
        mask = x < self.x0
        # evaluate each branch only where it is selected, so a domain
        # hazard in the inactive branch cannot fire
        if mask.any():
            out[mask] = np.broadcast_to(self.left(x[mask]), x[mask].shape)
        if (~mask).any():
            out[~mask] = np.broadcast_to(self.right(x[~mask]), x[~mask].shape)
        return out

    def _collect_breaks(self, out):
        out.add(self.x0)
        self.left._collect_breaks(out)
        self.right._collect_breaks(out)

    def _fmt(self, ctx):
        return f"piecewise({self.x0!r}; {self.left._fmt(0)}; {self.right._fmt(0)})"


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0
        self.depth = 0

    def _byte_offset(self, pos=None) -> int:
        if pos is None:
            pos = self.pos
        return len(self.src[:pos].encode("utf-8"))

    def _skip_ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def _expect(self, ch: str):
        if self._peek() != ch:
            found = self._peek() or "end of input"
            raise ParseError(f"expected '{ch}', found '{found}'", self._byte_offset())
        self.pos += 1

    def _enter(self):
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            raise ParseError("expression too deeply nested", self._byte_offset())

    def parse(self) -> Expr:
        self._skip_ws()
        if self.pos >= len(self.src):
            raise ParseError("empty expression", self._byte_offset())
        e = self.expr()
        if self._peek():
            raise ParseError(
                f"unexpected trailing input '{self._peek()}'", self._byte_offset()
            )
        return e

    def expr(self) -> Expr:
        self._enter()
        try:
            e = self.term()
            while self._peek() in ("+", "-"):
                op = self.src[self.pos]
                self.pos += 1
                e = BinOp(op, e, self.term())
            return e
        finally:
            self.depth -= 1

    def term(self) -> Expr:
        e = self.factor()
        while self._peek() in ("*", "/"):
            op = self.src[self.pos]
            self.pos += 1
            e = BinOp(op, e, self.factor())
        return e

    def factor(self) -> Expr:
        self._enter()
        try:
            if self._peek() == "-":
                self.pos += 1
                return Neg(self.factor())
            e = self.primary()
            if self._peek() == "^":
                self.pos += 1
                e = BinOp("^", e, self.factor())
            return e
        finally:
            self.depth -= 1

    def primary(self) -> Expr:
        ch = self._peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            e = self.expr()
            self._expect(")")
            return e
        if ch.isdigit() or ch == ".":
            return self.number()
        if ch.isalpha() or ch == "_":
            name = self.ident()
            if name == "x":
                return Var()
            if self._peek() != "(":
                raise ParseError(
                    f"unknown identifier '{name}'", self._byte_offset(start)
                )
            self.pos += 1
            if name == "piecewise":
                return self.piecewise(start)
            if name not in _FUNCS:
                raise ParseError(f"unknown function '{name}'", self._byte_offset(start))
            arg = self.expr()
            if self._peek() in (";", ","):
                raise ParseError(
                    f"'{name}' takes exactly one argument", self._byte_offset()
                )
            self._expect(")")
            return Call(name, arg)
        found = ch or "end of input"
        raise ParseError(f"expected a value, found '{found}'", self._byte_offset())

    def piecewise(self, start: int) -> Expr:
        x0_expr = self.expr()
        self._expect(";")
        left = self.expr()
        self._expect(";")
        right = self.expr()
        if self._peek() == ";":
            raise ParseError(
                "'piecewise' takes exactly three ';'-separated arguments",
                self._byte_offset(),
            )
        self._expect(")")
        if _has_var(x0_expr):
            raise ParseError(
                "piecewise breakpoint must be a constant expression",
                self._byte_offset(start),
            )
        try:
            x0 = x0_expr.eval(0.0)
        except EvalError as exc:
            raise ParseError(
                f"piecewise breakpoint failed to fold: {exc}", self._byte_offset(start)
            ) from None
        return Piecewise(x0, left, right)

    def ident(self) -> str:
        start = self.pos
        while self.pos < len(self.src) and (
            self.src[self.pos].isalnum() or self.src[self.pos] == "_"
        ):
            self.pos += 1
        return self.src[start : self.pos]

    def number(self) -> Expr:
        start = self.pos
        s = self.src
        while self.pos < len(s) and s[self.pos].isdigit():
            self.pos += 1
        if self.pos < len(s) and s[self.pos] == ".":
            self.pos += 1
            while self.pos < len(s) and s[self.pos].isdigit():
                self.pos += 1
        if self.pos < len(s) and s[self.pos] in "eE":
            mark = self.pos
            self.pos += 1
            if self.pos < len(s) and s[self.pos] in "+-":
                self.pos += 1
            if self.pos < len(s) and s[self.pos].isdigit():
                while self.pos < len(s) and s[self.pos].isdigit():
                    self.pos += 1
            else:
                self.pos = mark  # bare 'e' belongs to a following identifier error
        text = s[start : self.pos]
        try:
            value = float(text)
        except ValueError:
            raise ParseError(f"bad number '{text}'", self._byte_offset(start)) from None
        if not math.isfinite(value):
            raise ParseError(f"number '{text}' overflows", self._byte_offset(start))
        return Num(value)


def _has_var(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, Neg):
        return _has_var(e.child)
    if isinstance(e, BinOp):
        return _has_var(e.left) or _has_var(e.right)
    if isinstance(e, Call):
        return _has_var(e.arg)
    if isinstance(e, Piecewise):
        return _has_var(e.left) or _has_var(e.right)
    return False


def parse(src: str) -> Expr:
    """Parse a coefficient expression; raises ParseError with a byte offset."""
    if not isinstance(src, str):
        raise ParseError("expression source must be text", 0)
    return _Parser(src).parse()


def breakpoints(e: Expr) -> list[float]:
    return e.breakpoints()


def pretty(e: Expr) -> str:
    """Canonical rendering; parse(pretty(e)) reproduces the same tree."""
    return e.pretty()
