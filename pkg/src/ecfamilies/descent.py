"""Quadratic-form norms, quartic twists and their Weierstrass models, heights."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .arith import is_square
from .poly import HomPoly, IntPoly


class FormReducible(ValueError):
    pass


class BasePointInvalid(ValueError):
    pass


class TorsionCollapse(ArithmeticError):
    pass


# ---------------------------------------------------------------- quadratic forms

@dataclass(frozen=True)
class QuadElement:
    """u + v*omega in the quadratic order of discriminant D, omega = (D mod 2 + sqrt(D)) / 2."""
    u: int
    v: int
    D: int

    def __add__(self, other):
        return QuadElement(self.u + other.u, self.v + other.v, self.D)

    def scale(self, k: int):
        return QuadElement(k * self.u, k * self.v, self.D)

    def norm(self) -> int:
        delta = self.D % 2
        # (u + v*delta/2)^2 - v^2 D / 4
        return self.u * self.u + self.u * self.v * delta + self.v * self.v * (delta - self.D) // 4

    def as_sqrt_pair(self):
        """(p, q) with self = p + q*sqrt(D)."""
        delta = self.D % 2
        return Fraction(2 * self.u + self.v * delta, 2), Fraction(self.v, 2)


def quadform_embedding(a: int, b: int, c: int):
    """(alpha1, alpha2) with a*Q(x, y) = Norm(x*alpha1 + y*alpha2), Q = a x^2 + b x y + c y^2."""
    D = b * b - 4 * a * c
    if D >= 0 and is_square(D):
        raise FormReducible(f"discriminant {D} is a square")
    if gcd(gcd(a, b), c) != 1:
        raise ValueError("form must be primitive")
    delta = D % 2
    # (b + sqrt D)/2 = (b - delta)/2 + omega
    return QuadElement(a, 0, D), QuadElement((b - delta) // 2, 1, D)


def embedded_norm(alphas, x: int, y: int) -> int:
    a1, a2 = alphas
    return (a1.scale(x) + a2.scale(y)).norm()


# ---------------------------------------------------------------- curves d y^2 = x^3 + a2 x^2 + a4 x + a6

@dataclass(frozen=True)
class WeierstrassTwist:
    d: int
    a2: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.d == 0:
            raise ValueError("d must be nonzero")
        if self.discriminant() == 0:
            raise ValueError("singular cubic")

    def cubic(self, x):
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def cubic_prime(self, x):
        return (3 * x + 2 * self.a2) * x + self.a4

    def discriminant(self) -> int:
        a2, a4, a6 = self.a2, self.a4, self.a6
        return -4 * a2**3 * a6 + a2**2 * a4**2 + 18 * a2 * a4 * a6 - 4 * a4**3 - 27 * a6**2

    def contains(self, P: CurvePoint) -> bool:
        if P.is_infinity():
            return True
        return self.d * P.y * P.y == self.cubic(P.x)

    def untwisted(self) -> WeierstrassTwist:
        return WeierstrassTwist(1, self.a2, self.a4, self.a6)

    def point(self, x, y) -> CurvePoint:
        P = CurvePoint(Fraction(x), Fraction(y))
        if not self.contains(P):
            raise ValueError(f"({x}, {y}) is not on the curve")
        return P

    def neg(self, P: CurvePoint) -> CurvePoint:
        return P if P.is_infinity() else CurvePoint(P.x, -P.y)

    def add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        if P.is_infinity():
            return Q
        if Q.is_infinity():
            return P
        if P.x == Q.x:
            if P.y == -Q.y:
                return INFINITY
            lam = self.cubic_prime(P.x) / (2 * self.d * P.y)
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        x3 = self.d * lam * lam - self.a2 - P.x - Q.x
        y3 = -(P.y + lam * (x3 - P.x))
        return CurvePoint(x3, y3)

    def double(self, P: CurvePoint) -> CurvePoint:
        return self.add(P, P)

    def mul(self, n: int, P: CurvePoint) -> CurvePoint:
        if n < 0:
            return self.mul(-n, self.neg(P))
        R, A = INFINITY, P
        while n:
            if n & 1:
                R = self.add(R, A)
            A = self.double(A)
            n >>= 1
        return R

    def double_x(self, x: Fraction):
        """x([2]P) from x(P) alone; None if [2]P is the origin. Independent of d."""
        f = self.cubic(x)
        if f == 0:
            return None
        fp = self.cubic_prime(x)
        return fp * fp / (4 * f) - self.a2 - 2 * x


@dataclass(frozen=True)
class CurvePoint:
    x: Fraction | None
    y: Fraction | None

    def is_infinity(self) -> bool:
        return self.x is None


INFINITY = CurvePoint(None, None)


# ---------------------------------------------------------------- quartic to Weierstrass

def _quartic_coeffs(f: IntPoly):
    if f.degree() != 4:
        raise ValueError("f must have degree 4")
    return [f.c[i] if i < len(f.c) else 0 for i in range(5)]


def twist_target(f: IntPoly, d: int) -> WeierstrassTwist:
    a0, a1, a2, a3, a4 = _quartic_coeffs(f)
    return WeierstrassTwist(d, a2, a1 * a3 - 4 * a0 * a4, -(4 * a0 * a2 * a4 - a1 * a1 * a4 - a0 * a3 * a3))


class QuarticMap:
    """phi_{r,s}: C_d : d y^2 = f(x)  ->  E_d, built from a rational point (r, s) with s != 0."""

    def __init__(self, f: IntPoly, d: int, r, s):
        self.f, self.d = f, d
        self.r, self.s = Fraction(r), Fraction(s)
        a = _quartic_coeffs(f)
        self.a = a
        if self.s == 0 or d * self.s**2 != f(self.r):
            raise BasePointInvalid(f"({r}, {s}) is not a point of {d}*y^2 = f(x) with y != 0")
        self.E = twist_target(f, d)
        r, s = self.r, self.s
        d1 = f.derivative()
        d2 = d1.derivative()
        d3 = d2.derivative()
        fr, f1, f2, f3, f4 = f(r), d1(r), d2(r), d3(r), 24 * a[4]
        self.f1, self.f2 = f1, f2
        # quartic in x1 = x - r, divided by d: y^2 = A x1^4 + B x1^3 + C x1^2 + L x1 + s^2
        self.qA, self.qB = Fraction(f4, 24 * d), f3 / (6 * d)
        self.qC, self.qL = f2 / (2 * d), f1 / d
        self.A1 = f1 / (d * s)
        self.A2 = (f2 / 2 - f1 * f1 / (4 * fr)) / d
        self.A3 = 2 * s / d * f3 / 6
        self.A4 = -4 * fr * Fraction(f4, 24) / (d * d)
        self.A6 = self.A2 * self.A4
        self.shift = r * (a[3] + 2 * a[4] * r)

    def on_source(self, x, y) -> bool:
        return self.d * Fraction(y) ** 2 == self.f(Fraction(x))

    def to_long(self, x, y):
        """(x2, y2) on y^2 + A1 x y + A3 y = x^3 + A2 x^2 + A4 x + A6; None for the base point."""
        x, y = Fraction(x), Fraction(y)
        s, L, C = self.s, self.qL, self.qC
        x1, y1 = x - self.r, y
        if x1 == 0:
            if y1 == s:
                return None
            # the other point above x = r: limit along the branch y ~ -s
            B = self.qB
            e3 = -(B / (2 * s) - L * C / (4 * s**3) + L**3 / (16 * s**5))
            return -self.A2, 4 * s * s * e3
        x2 = (2 * s * (y1 + s) + L * x1) / x1**2
        y2 = (4 * s * s * (y1 + s) + 2 * s * (L * x1 + C * x1**2) - L * L * x1**2 / (2 * s)) / x1**3
        return x2, y2

    def long_to_target(self, x2, y2) -> CurvePoint:
        d = self.d
        x3 = d * x2 + self.shift
        y3 = Fraction(d, 2) * (2 * y2 + self.A1 * x2 + self.A3)
        return CurvePoint(x3, y3)

    def __call__(self, x, y) -> CurvePoint:
        if not self.on_source(x, y):
            raise ValueError(f"({x}, {y}) is not on the source curve")
        xy = self.to_long(x, y)
        if xy is None:
            return INFINITY
        return self.long_to_target(*xy)

    def at_infinity(self, sigma) -> CurvePoint:
        """Image of the point at infinity where y / x^2 -> sigma (needs d*sigma^2 = a4)."""
        sigma = Fraction(sigma)
        if self.d * sigma * sigma != self.a[4]:
            raise ValueError("no such point at infinity")
        return self.long_to_target(2 * self.s * sigma, Fraction(0))

    def long_curve_contains(self, x2, y2) -> bool:
        lhs = y2 * y2 + self.A1 * x2 * y2 + self.A3 * y2
        rhs = ((x2 + self.A2) * x2 + self.A4) * x2 + self.A6
        return lhs == rhs


def quartic_to_weierstrass(f: IntPoly, d: int, base) -> tuple[WeierstrassTwist, QuarticMap]:
    phi = QuarticMap(f, d, *base)
    return phi.E, phi


# ---------------------------------------------------------------- heights

def naive_height(P: CurvePoint) -> float:
    """log max(|num|, |den|) of the x-coordinate; 0 at the origin."""
    if P.is_infinity():
        return 0.0
    return _hx(P.x)


def _hx(x: Fraction) -> float:
    return _log_big(max(abs(x.numerator), x.denominator))


def _log_big(m: int) -> float:
    b = m.bit_length()
    if b < 1000:
        return math.log(m)
    return math.log(m >> (b - 64)) + (b - 64) * math.log(2)


def canonical_height(E: WeierstrassTwist, P: CurvePoint, n: int = 4, strict: bool = False,
                     max_bits: int = 2_000_000) -> float:
    """0.5 * 4^-n * h_x([2^n] P) by x-only doubling (error O(4^-n)).

    Points whose doubling orbit reaches the origin are torsion: 0.0 is returned,
    or TorsionCollapse raised when strict. If coordinates outgrow max_bits the
    estimate from the last level reached is returned."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if P.is_infinity():
        if strict:
            raise TorsionCollapse("point is the origin")
        return 0.0
    x = P.x
    for k in range(1, n + 1):
        nx = E.double_x(x)
        if nx is None:
            if strict:
                raise TorsionCollapse(f"[2^{k}]P is the origin")
            return 0.0
        x = nx
        if max(abs(x.numerator), x.denominator).bit_length() > max_bits:
            return 0.5 * 4.0**-k * _hx(x)
    return 0.5 * 4.0**-n * _hx(x)


def is_torsion(E: WeierstrassTwist, P: CurvePoint, bound: int = 16) -> bool:
    """True if [k]P = O for some k <= bound (bound 16 covers every torsion order over Q)."""
    Q = P
    for _ in range(bound):
        if Q.is_infinity():
            return True
        Q = E.add(Q, P)
    return Q.is_infinity()


# ---------------------------------------------------------------- point search and counts

def _hom_value(f: HomPoly, x: int, z: int) -> int:
    d = f.degree
    return sum(c * x ** (d - i) * z**i for i, c in enumerate(f.c) if c)


class _SearchWorker:
    def __init__(self, f, d, N):
        self.f, self.d, self.N = f, d, N

    def __call__(self, xs):
        out = []
        f, d, N = self.f, self.d, self.N
        for x in xs:
            for z in range(-N, N + 1):
                if gcd(x, z) != 1:
                    continue
                v = _hom_value(f, x, z)
                if v == 0:
                    out.append((x, 0, z))
                    continue
                if v % d:
                    continue
                q = v // d
                if q > 0 and is_square(q):
                    y = isqrt(q)
                    out.append((x, -y, z))
                    out.append((x, y, z))
        return out


def twist_point_search(f: HomPoly, d: int, N: int, jobs: int = 1):
    """All (x, y, z) with |x|, |z| <= N, gcd(x, z) = 1 and d y^2 = f(x, z), sorted."""
    if d == 0:
        raise ValueError("d must be nonzero")
    if f.degree not in (3, 4):
        raise ValueError("f must be a binary cubic or quartic")
    xs = list(range(-N, N + 1))
    w = _SearchWorker(f, d, N)
    if jobs <= 1:
        return sorted(w(xs))
    size = len(xs) // jobs + 1
    chunks = [xs[i : i + size] for i in range(0, len(xs), size)]
    with ProcessPoolExecutor(jobs) as ex:
        parts = list(ex.map(w, chunks))
    return sorted(p for part in parts for p in part)


def rational_points_cubic(E: WeierstrassTwist, bound: int):
    """Affine points of E with x = u / w^2, |u| <= bound, 1 <= w <= bound (y >= 0 only)."""
    out = []
    for w in range(1, bound + 1):
        w2 = w * w
        for u in range(-bound, bound + 1):
            if gcd(u, w) != 1:
                continue
            # d (y w^3)^2 = u^3 + a2 u^2 w^2 + a4 u w^4 + a6 w^6
            v = u**3 + E.a2 * u * u * w2 + E.a4 * u * w2 * w2 + E.a6 * w2**3
            if v == 0:
                out.append(CurvePoint(Fraction(u, w2), Fraction(0)))
                continue
            if v % E.d:
                continue
            q = v // E.d
            if q > 0 and is_square(q):
                out.append(CurvePoint(Fraction(u, w2), Fraction(isqrt(q), w2 * w)))
    return out


def packing_count_bound(c1, c2, r: int) -> int:
    """floor((1 + 2 sqrt(c2/c1))^r): lattice points of norm <= c2 when nonzero norms are >= c1."""
    if not (0 < c1 <= c2) or r < 0:
        raise ValueError("need 0 < c1 <= c2 and r >= 0")
    c1, c2 = Fraction(c1), Fraction(c2)
    # exact when c2/c1 is a rational square
    q = c2 / c1
    if is_square(q.numerator) and is_square(q.denominator):
        base = 1 + 2 * Fraction(isqrt(q.numerator), isqrt(q.denominator))
        return math.floor(base**r)
    return math.floor((1 + 2 * math.sqrt(q)) ** r)
