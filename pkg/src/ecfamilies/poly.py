"""Exact polynomials over Z and Q: univariate, homogeneous bivariate, rational functions.

Factorization over Q is the classical Zassenhaus method: square-free
decomposition, factorization modulo a good prime, Hensel lifting and
recombination of modular factors.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt, lcm

from .arith import primes_up_to


class DegreeTooLarge(ValueError):
    pass


class NotSquarefree(ValueError):
    pass


FACTOR_DEGREE_BOUND = 24


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


class IntPoly:
    """Polynomial with integer coefficients, low degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = _trim(coeffs)
        for a in c:
            if not isinstance(a, int):
                raise TypeError(f"integer coefficients required, got {a!r}")
        self.c = tuple(c)

    @classmethod
    def const(cls, a: int) -> IntPoly:
        return cls((a,))

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @property
    def coeffs(self):
        return list(self.c)

    def degree(self) -> int:
        return len(self.c) - 1  # -1 for the zero polynomial

    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(other)
        return isinstance(other, IntPoly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"IntPoly({list(self.c)})"

    def __str__(self):
        return self.to_text()

    def __lt__(self, other):
        return (self.degree(), self.c) < (other.degree(), other.c)

    def __neg__(self):
        return IntPoly(-a for a in self.c)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(other)
        n = max(len(self.c), len(other.c))
        a = self.c + (0,) * (n - len(self.c))
        b = other.c + (0,) * (n - len(other.c))
        return IntPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(a * other for a in self.c)
        if not self.c or not other.c:
            return IntPoly()
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = IntPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def derivative(self) -> IntPoly:
        return IntPoly(i * a for i, a in enumerate(self.c) if i)

    def content(self) -> int:
        g = 0
        for a in self.c:
            g = gcd(g, a)
        if self.c and self.c[-1] < 0:
            g = -g
        return g

    def primitive(self) -> IntPoly:
        """Primitive part with positive leading coefficient."""
        if not self.c:
            return self
        g = self.content()
        return IntPoly(a // g for a in self.c)

    def monic_q(self):
        return [Fraction(a, self.lc()) for a in self.c]

    def shift(self, k: int) -> IntPoly:
        """self * t^k."""
        return IntPoly((0,) * k + self.c) if self.c else self

    def reverse(self, degree: int | None = None) -> IntPoly:
        d = self.degree() if degree is None else degree
        c = list(self.c) + [0] * (d + 1 - len(self.c))
        return IntPoly(reversed(c))

    def compose_linear(self, a: int, b: int) -> IntPoly:
        """self(a*t + b)."""
        lin = IntPoly((b, a))
        acc = IntPoly()
        for coef in reversed(self.c):
            acc = acc * lin + coef
        return acc

    def to_text(self, var: str = "t") -> str:
        return format_terms([(a, ((var, i),)) for i, a in enumerate(self.c)])


# ---------------------------------------------------------------- printing

def _coef_text(a):
    if isinstance(a, Fraction) and a.denominator == 1:
        a = a.numerator
    return str(a)


def format_terms(terms) -> str:
    """terms: list of (coefficient, ((var, power), ...)) in display order."""
    parts = []
    for a, mono in terms:
        if a == 0:
            continue
        mono_s = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono if e)
        neg = a < 0
        mag = -a if neg else a
        if mono_s:
            body = mono_s if mag == 1 else f"{_coef_text(mag)}*{mono_s}"
        else:
            body = _coef_text(mag)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"


# ---------------------------------------------------------------- Q[t] helpers

def _qtrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _qdivmod(a, b):
    """Division of Fraction coefficient lists."""
    a = _qtrim(a)
    b = _qtrim(b)
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        coef = Fraction(a[-1]) / lb
        q[k] = coef
        for i, bi in enumerate(b):
            a[i + k] -= coef * bi
        a = _qtrim(a)
    return q, a


def from_rational_coeffs(c) -> tuple[Fraction, IntPoly]:
    """Write a Fraction coefficient list as scalar * primitive IntPoly."""
    c = _qtrim([Fraction(a) for a in c])
    if not c:
        return Fraction(0), IntPoly()
    den = reduce(lcm, (a.denominator for a in c), 1)
    ints = [int(a * den) for a in c]
    p = IntPoly(ints)
    g = p.content()
    return Fraction(g, den), IntPoly(a // g for a in ints)


def poly_divmod(f: IntPoly, g: IntPoly):
    """Division over Q; returns (scalar_q, q, scalar_r, r) with f = sq*q*g + sr*r."""
    q, r = _qdivmod(list(map(Fraction, f.c)), list(map(Fraction, g.c)))
    sq, qq = from_rational_coeffs(q)
    sr, rr = from_rational_coeffs(r)
    return sq, qq, sr, rr


def exact_div(f: IntPoly, g: IntPoly) -> IntPoly | None:
    """f / g if g divides f in Z[t] (exact, integer quotient), else None."""
    if g.is_zero():
        raise ZeroDivisionError
    if f.is_zero():
        return IntPoly()
    if g.degree() > f.degree():
        return None
    a = list(f.c)
    b = g.c
    lb = b[-1]
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        top = a[k + len(b) - 1]
        if top % lb:
            return None
        coef = top // lb
        q[k] = coef
        if coef:
            for i, bi in enumerate(b):
                a[i + k] -= coef * bi
    if any(a[: len(b) - 1]):
        return None
    return IntPoly(q)


def divides(g: IntPoly, f: IntPoly) -> bool:
    """g | f in Q[t]."""
    _, _, sr, r = poly_divmod(f, g)
    return r.is_zero()


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """gcd in Q[t], normalized primitive with positive leading coefficient."""
    a, b = f.primitive(), g.primitive()
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    while not b.is_zero():
        if a.degree() < b.degree():
            a, b = b, a
        # pseudo-remainder, then strip content to keep numbers small
        _, _, _, r = poly_divmod(a, b)
        a, b = b, r.primitive()
    return a.primitive()


def squarefree_decomposition(f: IntPoly):
    """List of (a_i, i) with f = c * prod a_i^i, a_i squarefree and pairwise coprime."""
    f = f.primitive()
    if f.degree() < 1:
        return []
    out = []
    g = poly_gcd(f, f.derivative())
    w = exact_div_q(f, g)
    i = 1
    while w.degree() > 0:
        y = poly_gcd(w, g)
        z = exact_div_q(w, y)
        if z.degree() > 0:
            out.append((z.primitive(), i))
        w = y
        g = exact_div_q(g, y)
        i += 1
    return out


def exact_div_q(f: IntPoly, g: IntPoly) -> IntPoly:
    """Quotient f/g over Q, made primitive with the sign of the true quotient.

    Only the class of the quotient up to a positive scalar is kept; use
    exact_div_scaled when the scalar matters."""
    s, p = exact_div_scaled(f, g)
    return p if s > 0 else -p


def exact_div_scaled(f: IntPoly, g: IntPoly) -> tuple[Fraction, IntPoly]:
    """(s, p) with f/g = s*p exactly over Q, p primitive."""
    q, r = _qdivmod(list(map(Fraction, f.c)), list(map(Fraction, g.c)))
    if _qtrim(r):
        raise ArithmeticError("inexact division")
    return from_rational_coeffs(q)


def is_squarefree_poly(f: IntPoly) -> bool:
    return poly_gcd(f, f.derivative()).degree() <= 0


# ---------------------------------------------------------------- resultants

def _bareiss_det(m):
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def sylvester_matrix(f: IntPoly, g: IntPoly):
    m, n = f.degree(), g.degree()
    fc = list(reversed(f.c))
    gc = list(reversed(g.c))
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return rows


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Determinant of the Sylvester matrix of f and g (f's rows first)."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial")
    return _bareiss_det(sylvester_matrix(f, g))


def discriminant(f: IntPoly) -> int:
    """Res(f, f') with no sign or leading-coefficient normalization."""
    if f.degree() < 1:
        raise ValueError("discriminant needs degree >= 1")
    return resultant(f, f.derivative())


def classical_discriminant(f: IntPoly) -> int:
    """(-1)^(n(n-1)/2) Res(f, f') / lc(f), the usual discriminant."""
    n = f.degree()
    r = resultant(f, f.derivative())
    s = -1 if (n * (n - 1) // 2) % 2 else 1
    return s * r // f.lc()


# ---------------------------------------------------------------- mod p arithmetic

def _mtrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _mmul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _mtrim([v % m for v in out])


def _msub(a, b, m):
    n = max(len(a), len(b))
    return _mtrim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m for i in range(n)])


def _madd(a, b, m):
    n = max(len(a), len(b))
    return _mtrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m for i in range(n)])


def _mdivmod(a, b, m):
    """Division by b whose leading coefficient is invertible mod m."""
    a = [v % m for v in a]
    _mtrim(a)
    inv = pow(b[-1], -1, m)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        coef = a[-1] * inv % m
        q[k] = coef
        for i, bi in enumerate(b):
            a[i + k] = (a[i + k] - coef * bi) % m
        _mtrim(a)
    return _mtrim(q), a


def _mmonic(a, p):
    inv = pow(a[-1], -1, p)
    return [v * inv % p for v in a]


def _mgcd(a, b, p):
    a, b = _mtrim(list(a)), _mtrim(list(b))
    while b:
        _, r = _mdivmod(a, b, p)
        a, b = b, r
    return _mmonic(a, p) if a else a


def _mxgcd(a, b, p):
    """s, t with s*a + t*b = 1 mod p (a, b coprime)."""
    r0, r1 = _mtrim(list(a)), _mtrim(list(b))
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = _mdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _msub(s0, _mmul(q, s1, p), p)
        t0, t1 = t1, _msub(t0, _mmul(q, t1, p), p)
    inv = pow(r0[0], -1, p)
    return [v * inv % p for v in s0], [v * inv % p for v in t0]


def _mpowmod(base, e, mod, p):
    out = [1]
    _, base = _mdivmod(base, mod, p)
    while e:
        if e & 1:
            _, out = _mdivmod(_mmul(out, base, p), mod, p)
        _, base = _mdivmod(_mmul(base, base, p), mod, p)
        e >>= 1
    return out


def _ddf(f, p):
    """Distinct-degree factorization of a monic squarefree f mod p."""
    out = []
    h = [0, 1]
    i = 0
    f = list(f)
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = _mpowmod(h, p, f, p)
        g = _mgcd(f, _msub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, i))
            f, _ = _mdivmod(f, g, p)
            _, h = _mdivmod(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _edf(f, d, p, rng):
    """Equal-degree splitting (Cantor-Zassenhaus), p odd."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        _mtrim(a)
        if len(a) < 2:
            continue
        b = _mpowmod(a, (p**d - 1) // 2, f, p)
        g = _mgcd(f, _msub(b, [1], p), p)
        if 1 < len(g) < len(f):
            h, _ = _mdivmod(f, g, p)
            return _edf(g, d, p, rng) + _edf(_mmonic(h, p), d, p, rng)


def factor_mod_p(f: IntPoly, p: int, seed: int = 0):
    """Monic irreducible factors of a squarefree f mod odd prime p (lc unit)."""
    a = _mmonic([v % p for v in f.c], p)
    rng = random.Random(seed)
    out = []
    for g, d in _ddf(a, p):
        out.extend(_edf(g, d, p, rng))
    return sorted(out)


# ---------------------------------------------------------------- Hensel lifting

def _hensel_step(F, g, h, s, t, m):
    """One quadratic step: F = g*h mod m -> mod m^2 (g, h monic)."""
    m2 = m * m
    e = _msub(F, _mmul(g, h, m2), m2)
    q, r = _mdivmod(_mmul(s, e, m2), h, m2)
    g2 = _madd(_madd(g, _mmul(t, e, m2), m2), _mmul(q, g, m2), m2)
    h2 = _madd(h, r, m2)
    b = _msub(_madd(_mmul(s, g2, m2), _mmul(t, h2, m2), m2), [1], m2)
    c, d = _mdivmod(_mmul(s, b, m2), h2, m2)
    s2 = _msub(s, d, m2)
    t2 = _msub(_msub(t, _mmul(t, b, m2), m2), _mmul(c, g2, m2), m2)
    return g2, h2, s2, t2


def _lift_all(F, factors, p, k):
    """Lift monic factors of monic F mod p to mod p^k (k a power of two steps)."""
    if len(factors) == 1:
        M = p**k
        return [[v % M for v in F]]
    half = len(factors) // 2
    A, B = factors[:half], factors[half:]
    g = reduce(lambda u, v: _mmul(u, v, p), A)
    h = reduce(lambda u, v: _mmul(u, v, p), B)
    s, t = _mxgcd(g, h, p)
    m = p
    M = p**k
    while m < M:
        g, h, s, t = _hensel_step([v % (m * m) for v in F], g, h, s, t, m)
        m = m * m
    g = [v % M for v in g]
    h = [v % M for v in h]
    return _lift_all(g, A, p, k) + _lift_all(h, B, p, k)


def _symmetric(a, M):
    return [v - M if v > M // 2 else v for v in a]


def _zassenhaus(f: IntPoly, seed: int = 0):
    """Irreducible factors of a primitive squarefree f with positive lc, deg >= 2."""
    n = f.degree()
    lcf = f.lc()
    best = None
    tried = 0
    for p in primes_up_to(2000)[1:]:
        p = int(p)
        if lcf % p == 0:
            continue
        fm = [v % p for v in f.c]
        if len(_mgcd(fm, _mtrim([v % p for v in f.derivative().c]), p)) > 1:
            continue
        facs = factor_mod_p(f, p, seed)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        tried += 1
        if len(facs) == 1 or tried >= 6:
            break
    if best is None:
        raise ArithmeticError("no good prime found")
    p, facs = best
    if len(facs) == 1:
        return [f]
    norm2 = isqrt(sum(a * a for a in f.c)) + 1
    bound = 2 * (2**n) * norm2 * abs(lcf)
    k = 1
    while p ** k <= bound:
        k *= 2
    M = p**k
    Fm = [v * pow(lcf, -1, M) % M for v in f.c]
    lifted = _lift_all(Fm, facs, p, k)
    out = []
    g = f
    s = 1
    while 2 * s <= len(lifted):
        found = False
        for S in itertools.combinations(range(len(lifted)), s):
            lc = g.lc()
            cand = [lc % M]
            for i in S:
                cand = _mmul(cand, lifted[i], M)
            cand = IntPoly(_symmetric(cand, M)).primitive()
            if cand.degree() < 1:
                continue
            if cand.c[0] and g.c[0] % cand.c[0]:
                continue
            q = exact_div(g, cand)
            if q is None:
                continue
            out.append(cand)
            g = q.primitive()
            lifted = [u for i, u in enumerate(lifted) if i not in S]
            found = True
            break
        if not found:
            s += 1
    if g.degree() > 0:
        out.append(g)
    return out


def factor_q(f: IntPoly, bound: int = FACTOR_DEGREE_BOUND):
    """Factor f over Q.

    The degree bound applies to each square-free part handed to the
    modular factorization, not to f itself.
    Returns (content, [(irreducible primitive factor, multiplicity), ...]) with
    factors primitive, positive leading coefficient and sorted; content is the
    rational (here integer) unit so that content * prod = f."""
    if f.is_zero():
        raise ValueError("cannot factor 0")
    content = f.content()
    g = f.primitive()
    # strip powers of t first
    v = 0
    while g.c and g.c[0] == 0:
        v += 1
        g = IntPoly(g.c[1:])
    out = []
    if v:
        out.append((IntPoly.x(), v))
    for a, i in squarefree_decomposition(g):
        if a.degree() > bound:
            raise DegreeTooLarge(f"square-free part of degree {a.degree()} exceeds bound {bound}")
        if a.degree() == 1:
            out.append((a, i))
            continue
        for q in _zassenhaus(a):
            out.append((q.primitive(), i))
    out.sort(key=lambda fm: (fm[0].degree(), fm[0].c, fm[1]))
    # reconcile the sign of the content with the product
    prod = IntPoly.const(1)
    for q, i in out:
        prod = prod * q**i
    if prod.lc() * content != f.lc():
        content = -content
    return content, out


def irreducible_factors(f: IntPoly):
    return [q for q, _ in factor_q(f)[1]]


def is_irreducible(f: IntPoly) -> bool:
    _, facs = factor_q(f)
    return len(facs) == 1 and facs[0][1] == 1 and f.degree() >= 1


# ---------------------------------------------------------------- homogeneous polynomials

class HomPoly:
    """Homogeneous polynomial in x, y of a given degree.

    coeffs[i] is the coefficient of x^(degree-i) * y^i, so that the
    dehomogenization at x = 1 is the IntPoly with the same coefficient list.
    """

    __slots__ = ("degree", "c")

    def __init__(self, degree: int, coeffs):
        c = list(coeffs)
        if len(c) > degree + 1:
            if any(c[degree + 1 :]):
                raise ValueError("too many coefficients for degree")
            c = c[: degree + 1]
        c += [0] * (degree + 1 - len(c))
        self.degree = degree
        self.c = tuple(c)

    @classmethod
    def const(cls, a: int) -> HomPoly:
        return cls(0, [a])

    @classmethod
    def from_t(cls, q: IntPoly, degree: int | None = None) -> HomPoly:
        """x^degree * q(y/x)."""
        d = q.degree() if degree is None else degree
        if q.degree() > d:
            raise ValueError("degree too small")
        return cls(d, q.c)

    def dehom_x(self) -> IntPoly:
        """P(1, t)."""
        return IntPoly(self.c)

    def dehom_y(self) -> IntPoly:
        """P(s, 1)."""
        return IntPoly(reversed(self.c))

    def is_zero(self):
        return not any(self.c)

    def is_const(self):
        return self.degree == 0

    def __eq__(self, other):
        return isinstance(other, HomPoly) and self.degree == other.degree and self.c == other.c

    def __hash__(self):
        return hash((self.degree, self.c))

    def __repr__(self):
        return f"HomPoly({self.degree}, {list(self.c)})"

    def __str__(self):
        return self.to_text()

    def __mul__(self, other):
        if isinstance(other, int):
            return HomPoly(self.degree, [a * other for a in self.c])
        prod = IntPoly(self.c) * IntPoly(other.c)
        return HomPoly(self.degree + other.degree, prod.c)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = HomPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __neg__(self):
        return HomPoly(self.degree, [-a for a in self.c])

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return HomPoly(self.degree, [a + b for a, b in zip(self.c, other.c)])

    def __sub__(self, other):
        return self + (-other)

    def __call__(self, x, y):
        d = self.degree
        return sum(a * x ** (d - i) * y**i for i, a in enumerate(self.c) if a)

    def content(self) -> int:
        g = 0
        for a in self.c:
            g = gcd(g, a)
        return g

    def normalized(self) -> HomPoly:
        """Primitive, with the first nonzero coefficient in x-lex order positive."""
        g = self.content()
        if g == 0:
            return self
        lead = next(a for a in self.c if a)
        if lead < 0:
            g = -g
        return HomPoly(self.degree, [a // g for a in self.c])

    def unit_equal(self, other) -> bool:
        return self.normalized() == other.normalized()

    def x_multiplicity(self) -> int:
        """Largest k with x^k | P."""
        k = 0
        for a in reversed(self.c):
            if a:
                break
            k += 1
        return k

    def to_text(self) -> str:
        d = self.degree
        return format_terms([(a, (("x", d - i), ("y", i))) for i, a in enumerate(self.c)])


def deg_place() -> HomPoly:
    """The polynomial attached to the place at infinity of t: P = x."""
    return HomPoly(1, [1, 0])


def homogenize_place(q: IntPoly) -> HomPoly:
    """P_v(x, y) = x^deg(q) * q(y/x)."""
    return HomPoly.from_t(q)


def hom_divides(a: HomPoly, b: HomPoly) -> bool:
    """a | b in Q[x, y]."""
    if a.is_zero():
        return b.is_zero()
    if b.is_zero():
        return True
    if a.degree > b.degree:
        return False
    kx_a, kx_b = a.x_multiplicity(), b.x_multiplicity()
    if kx_a > kx_b:
        return False
    return divides(a.dehom_x(), b.dehom_x())


def hom_exact_div(a: HomPoly, b: HomPoly) -> HomPoly:
    """a / b over Q, scaled to integer coefficients (primitive)."""
    q = exact_div_q(a.dehom_x(), b.dehom_x())
    return HomPoly.from_t(q, a.degree - b.degree)


def factor_hom(P: HomPoly):
    """(content, [(irreducible normalized HomPoly, multiplicity)])."""
    if P.is_zero():
        raise ValueError("cannot factor 0")
    q = P.dehom_x()
    kx = P.degree - q.degree()
    content, facs = factor_q(q) if q.degree() >= 1 else (q.c[0], [])
    out = []
    if kx:
        out.append((deg_place(), kx))
    for f, m in facs:
        out.append((homogenize_place(f), m))
    prod = HomPoly.const(content)
    for f, m in out:
        prod = prod * f**m
    sign = 1
    nout = []
    for f, m in out:
        nf = f.normalized()
        if nf != f:
            sign *= (-1) ** m
        nout.append((nf, m))
    return content * sign, nout


def is_squarefree_hom(P: HomPoly) -> bool:
    if P.x_multiplicity() > 1:
        return False
    return is_squarefree_poly(P.dehom_x())


def discriminant_hom(f: HomPoly) -> int:
    """lcm of Res(f(x,1), d/dx) and Res(f(1,y), d/dy); nonnegative."""
    a = f.dehom_y()
    b = f.dehom_x()
    vals = []
    for g in (a, b):
        if g.degree() >= 1:
            vals.append(abs(resultant(g, g.derivative())))
        else:
            vals.append(1)
    return lcm(*vals)


def lcm_sqfree(A: IntPoly, B: IntPoly) -> IntPoly:
    """F*G*H where A = F*H, B = G*H with F, G, H pairwise coprime."""
    for P in (A, B):
        if P.degree() >= 1 and not is_squarefree_poly(P):
            raise NotSquarefree(str(P))
    H = poly_gcd(A, B)
    F = exact_div_q(A.primitive(), H)
    return (F * B.primitive()).primitive()


def hom_product(polys) -> HomPoly:
    out = HomPoly.const(1)
    for p in polys:
        out = out * p
    return out.normalized()


# ---------------------------------------------------------------- rational functions

class RatFunc:
    """scalar * num / den with num, den primitive, positive lc, coprime."""

    __slots__ = ("scalar", "num", "den")

    def __init__(self, scalar, num: IntPoly | None = None, den: IntPoly | None = None):
        scalar = Fraction(scalar)
        num = IntPoly.const(1) if num is None else num
        den = IntPoly.const(1) if den is None else den
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero() or scalar == 0:
            self.scalar, self.num, self.den = Fraction(0), IntPoly.const(1), IntPoly.const(1)
            return
        g = poly_gcd(num, den)
        if g.degree() > 0:
            sn, num = exact_div_scaled(num, g)
            sd, den = exact_div_scaled(den, g)
            scalar = scalar * sn / sd
        cn, cd = num.content(), den.content()
        self.scalar = scalar * cn / cd
        self.num = IntPoly(a // cn for a in num.c)
        self.den = IntPoly(a // cd for a in den.c)

    @classmethod
    def from_poly(cls, p: IntPoly) -> RatFunc:
        return cls(1, p)

    @classmethod
    def t(cls) -> RatFunc:
        return cls(1, IntPoly.x())

    def is_zero(self):
        return self.scalar == 0

    def is_const(self):
        return self.num.degree() == 0 and self.den.degree() == 0

    def is_poly(self):
        return self.den.degree() == 0

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc(other)
            except (TypeError, ValueError):
                return NotImplemented
        return (self.scalar, self.num, self.den) == (other.scalar, other.num, other.den)

    def __hash__(self):
        return hash((self.scalar, self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    @staticmethod
    def _coerce(x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, IntPoly):
            return RatFunc(1, x)
        return RatFunc(x)

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFunc(self.scalar * other.scalar, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError
        return RatFunc(self.scalar / other.scalar, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return RatFunc(-self.scalar, self.num, self.den)

    def __add__(self, other):
        other = self._coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a1, b1 = self.scalar.numerator, self.scalar.denominator
        a2, b2 = other.scalar.numerator, other.scalar.denominator
        num = self.num * other.den * (a1 * b2) + other.num * self.den * (a2 * b1)
        return RatFunc(Fraction(1, b1 * b2), num, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __pow__(self, e: int):
        if e < 0:
            return RatFunc(1) / (self ** (-e))
        return RatFunc(self.scalar**e, self.num**e, self.den**e)

    def __call__(self, t):
        """Value at a rational t; raises ZeroDivisionError at poles."""
        d = self.den(Fraction(t))
        if d == 0:
            raise ZeroDivisionError("pole")
        return self.scalar * self.num(Fraction(t)) / d

    def degree(self) -> int:
        """deg num - deg den (the order of the pole at infinity)."""
        if self.is_zero():
            raise ValueError("degree of zero")
        return self.num.degree() - self.den.degree()

    def to_text(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        s = self.scalar
        if self.den.degree() == 0:
            return format_terms([(a * s, ((var, i),)) for i, a in enumerate(self.num.c)])
        top = format_terms([(a * s, ((var, i),)) for i, a in enumerate(self.num.c)])
        return f"({top})/({self.den.to_text(var)})"
