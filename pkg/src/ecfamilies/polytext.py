"""Text format for polynomials and rational functions.

Accepted syntax is ordinary arithmetic: integers, `+ - * /`, parentheses and
`^` (or `**`) with an integer exponent, e.g. `1 + 8/3*t + t^2`,
`x^3 + 2*y^3`, `t^-2*(t^-2 - 1728)`.
"""
from __future__ import annotations

import ast
from fractions import Fraction

from .poly import HomPoly, IntPoly, RatFunc, format_terms, from_rational_coeffs


class ParseError(ValueError):
    def __init__(self, msg, text, line=1, col=0):
        super().__init__(f"{msg} (line {line}, column {col + 1}): {text!r}")
        self.line = line
        self.col = col


class BiPoly:
    """Sparse polynomial in two variables with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def const(cls, a):
        return cls({(0, 0): a})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + a * b
        return BiPoly(out)

    def __pow__(self, e):
        out = BiPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def is_const(self):
        return all(k == (0, 0) for k in self.terms)

    def const_value(self):
        return self.terms.get((0, 0), Fraction(0))

    def total_degrees(self):
        return {i + j for i, j in self.terms}

    def is_integral(self):
        return all(v.denominator == 1 for v in self.terms.values())

    def int_terms(self):
        return {k: int(v) for k, v in self.terms.items()}

    def degree_in(self, idx):
        return max((k[idx] for k in self.terms), default=0)

    def __call__(self, a, b):
        return sum(v * a**i * b**j for (i, j), v in self.terms.items())

    def to_hom(self) -> HomPoly:
        degs = self.total_degrees()
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        if not self.is_integral():
            raise ValueError("homogeneous polynomials need integer coefficients")
        d = degs.pop() if degs else 0
        c = [0] * (d + 1)
        for (i, j), v in self.terms.items():
            c[j] = int(v)
        return HomPoly(d, c)

    def to_text(self, names=("x", "y")):
        keys = sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0]))
        return format_terms([(self.terms[k], ((names[0], k[0]), (names[1], k[1]))) for k in keys])


def _parse_tree(text: str):
    src = text.replace("^", "**")
    try:
        tree = ast.parse(src.strip(), mode="eval")
    except SyntaxError as e:
        raise ParseError("syntax error", text, e.lineno or 1, (e.offset or 1) - 1) from None
    return tree.body


def _names(node):
    return sorted({n.id for n in ast.walk(node) if isinstance(n, ast.Name)})


def _int_exponent(node, text):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_exponent(node.operand, text)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.UAdd):
        return _int_exponent(node.operand, text)
    raise ParseError("exponent must be an integer literal", text, getattr(node, "lineno", 1), getattr(node, "col_offset", 0))


def _evaluate(node, text, leaf, const):
    def ev(n):
        if isinstance(n, ast.Constant):
            if isinstance(n.value, bool) or not isinstance(n.value, int):
                raise ParseError("only integer literals allowed", text, n.lineno, n.col_offset)
            return const(n.value)
        if isinstance(n, ast.Name):
            return leaf(n)
        if isinstance(n, ast.UnaryOp) and isinstance(n.op, (ast.USub, ast.UAdd)):
            v = ev(n.operand)
            return -v if isinstance(n.op, ast.USub) else v
        if isinstance(n, ast.BinOp):
            if isinstance(n.op, ast.Pow):
                e = _int_exponent(n.right, text)
                base = ev(n.left)
                if e < 0:
                    return const(1) / (base ** (-e))
                return base**e
            a, b = ev(n.left), ev(n.right)
            if isinstance(n.op, ast.Add):
                return a + b
            if isinstance(n.op, ast.Sub):
                return a - b
            if isinstance(n.op, ast.Mult):
                return a * b
            if isinstance(n.op, ast.Div):
                try:
                    return a / b
                except ZeroDivisionError:
                    raise ParseError("division by zero", text, n.lineno, n.col_offset) from None
        raise ParseError(f"unsupported syntax {type(n).__name__}", text, getattr(n, "lineno", 1), getattr(n, "col_offset", 0))

    return ev(node)


def parse_ratfunc(text: str, var: str | None = None) -> RatFunc:
    """Parse a rational function of one variable (any single name)."""
    node = _parse_tree(text)
    names = _names(node)
    if len(names) > 1 or (var is not None and names and names != [var]):
        raise ParseError(f"expected one variable, found {names}", text)
    return _evaluate(node, text, lambda n: RatFunc.t(), lambda c: RatFunc(c))


def parse_intpoly(text: str, var: str | None = None) -> IntPoly:
    r = parse_ratfunc(text, var)
    if not r.is_poly():
        raise ParseError("not a polynomial", text)
    s = r.scalar * Fraction(1, r.den.c[0])
    if s.denominator != 1:
        raise ParseError("coefficients are not integers", text)
    return r.num * int(s)


class _BiAlg:
    """BiPoly wrapper allowing division by nonzero constants only."""

    def __init__(self, p):
        self.p = p

    def __add__(self, o):
        return _BiAlg(self.p + o.p)

    def __sub__(self, o):
        return _BiAlg(self.p - o.p)

    def __mul__(self, o):
        return _BiAlg(self.p * o.p)

    def __neg__(self):
        return _BiAlg(-self.p)

    def __pow__(self, e):
        return _BiAlg(self.p**e)

    def __truediv__(self, o):
        if not o.p.is_const():
            raise ValueError("division by a non-constant")
        c = o.p.const_value()
        if c == 0:
            raise ZeroDivisionError
        return _BiAlg(BiPoly({k: v / c for k, v in self.p.terms.items()}))


def default_var_order(names):
    if set(names) <= {"x", "y"}:
        return ["x", "y"]
    if set(names) <= {"a", "b"}:
        return ["a", "b"]
    return sorted(names) + ["_"] * (2 - len(names))


def parse_bipoly(text: str, names=None):
    """Parse a polynomial in at most two variables; returns (BiPoly, names)."""
    node = _parse_tree(text)
    found = _names(node)
    if names is None:
        names = default_var_order(found)
    if not set(found) <= set(names) or len(found) > 2:
        raise ParseError(f"unexpected variables {found}", text)

    def leaf(n):
        idx = names.index(n.id)
        return _BiAlg(BiPoly({(1, 0) if idx == 0 else (0, 1): 1}))

    try:
        val = _evaluate(node, text, leaf, lambda c: _BiAlg(BiPoly.const(c)))
    except ValueError as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(str(e), text) from None
    return val.p, list(names)


def parse_hompoly(text: str) -> HomPoly:
    p, names = parse_bipoly(text, ["x", "y"])
    try:
        return p.to_hom()
    except ValueError as e:
        raise ParseError(str(e), text) from None


def hom_from_rational(p: BiPoly) -> tuple[Fraction, HomPoly]:
    """Scalar and primitive integer HomPoly for a homogeneous BiPoly."""
    degs = p.total_degrees()
    d = degs.pop() if degs else 0
    c = [Fraction(0)] * (d + 1)
    for (i, j), v in p.terms.items():
        c[j] = v
    s, q = from_rational_coeffs(c)
    return s, HomPoly(d, q.c)
