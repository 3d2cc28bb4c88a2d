"""Square-free values of polynomials: local root counts, Euler products, exact censuses."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict
from fractions import Fraction
from math import isqrt

import numpy as np

from .arith import factorize, primes_up_to
from .poly import HomPoly, IntPoly
from .polytext import BiPoly

UNIVARIATE = "univariate"
BIVARIATE = "bivariate"
BIVARIATE_COPRIME = "bivariate-coprime"


def _poly_mod_values(coeffs, xs, m):
    """Horner evaluation of sum c_i x^i mod m on an int64 array (m < 3e9)."""
    acc = np.zeros(xs.shape, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + (c % m)) % m
    return acc


def roots_mod(P, m: int) -> int:
    """Number of x mod m (or pairs (x, y) mod m) with P = 0 mod m, by enumeration."""
    if m < 1:
        raise ValueError("m must be positive")
    if isinstance(P, IntPoly):
        xs = np.arange(m, dtype=np.int64)
        return int((_poly_mod_values(P.c, xs, m) == 0).sum())
    terms = _terms(P)
    r = np.arange(m, dtype=np.int64)
    total = 0
    for x in range(m):
        acc = np.zeros(m, dtype=np.int64)
        for (i, j), c in terms.items():
            acc = (acc + (c % m) * pow(x, i, m) % m * _powmod_arr(r, j, m)) % m
        total += int((acc == 0).sum())
    return total


def _powmod_arr(a, e, m):
    out = np.ones(a.shape, dtype=np.int64)
    for _ in range(e):
        out = out * a % m
    return out


def _terms(P):
    if isinstance(P, HomPoly):
        return {(P.degree - i, i): c for i, c in enumerate(P.c) if c}
    if isinstance(P, BiPoly):
        if not P.is_integral():
            raise ValueError("integer coefficients required")
        return P.int_terms()
    raise TypeError("expected IntPoly, HomPoly or BiPoly")


def ell_p2(f: IntPoly, p: int) -> int:
    """#{x mod p^2 : f(x) = 0 mod p^2} by lifting roots mod p."""
    xs = np.arange(p, dtype=np.int64)
    roots = np.nonzero(_poly_mod_values(f.c, xs, p) == 0)[0]
    df = f.derivative()
    n = 0
    for r in roots.tolist():
        if df(r) % p:
            n += 1
        elif f(r) % (p * p) == 0:
            n += p
    return n


def _hom(P):
    if isinstance(P, HomPoly):
        return P
    if isinstance(P, BiPoly) and len(P.total_degrees()) == 1:
        return P.to_hom()
    raise ValueError("bivariate local counts need a homogeneous polynomial")


def ell2_p2(P, p: int, coprime: bool = False) -> int:
    """#{(x, y) mod p^2 : P(x, y) = 0 mod p^2}, optionally only pairs not both divisible by p."""
    F = _hom(P)
    d = F.degree
    f = F.dehom_x()   # F(1, t)
    g = F.dehom_y()   # F(s, 1)
    p2 = p * p
    phi = p * (p - 1)
    # y a unit: (x, y) = y (t, 1) with t = x/y arbitrary; note F(t, 1) = g(t)
    n_y_unit = phi * _count_mod(g.c, p2, 0, 1)
    # p | y, x a unit: (x, y) = x (1, s), p | s
    n_x_unit = phi * _count_mod(f.c, p2, 0, p)
    total = n_y_unit + n_x_unit
    if coprime:
        return total
    # both divisible by p: F(p u, p v) = p^d F(u, v)
    if d >= 2:
        total += p2
    elif d == 1:
        ok = sum(1 for u in range(p) for v in range(p) if F(u, v) % p == 0)
        total += ok
    else:
        total += p2 if F.c[0] % p2 == 0 else 0
    return total


def _count_mod(coeffs, m, start, step):
    if not any(coeffs):
        return len(range(start, m, step))
    xs = np.arange(start, m, step, dtype=np.int64)
    return int((_poly_mod_values(list(coeffs), xs, m) == 0).sum())


def truncation_error_bound(deg: int, B: int) -> float:
    """Crude bound deg / (B log B) for the tail sum of deg / p^2 over p > B."""
    return deg / (B * math.log(B))


def density_main_term(P, B: int = 1000, mode: str = UNIVARIATE) -> Fraction:
    """Truncated Euler product for the density of square-free values."""
    if B < 2:
        raise ValueError("B must be at least 2")
    out = Fraction(1)
    for p in primes_up_to(B).tolist():
        if mode == UNIVARIATE:
            out *= 1 - Fraction(ell_p2(P, p), p * p)
        elif mode == BIVARIATE:
            out *= 1 - Fraction(ell2_p2(P, p), p**4)
        elif mode == BIVARIATE_COPRIME:
            out *= 1 - Fraction(ell2_p2(P, p, coprime=True), p**4 - p**2)
        else:
            raise ValueError(f"unknown mode {mode}")
    return out


@dataclass
class CensusReport:
    N: int
    mode: str
    domain_size: int
    count: int
    nonsquarefree: int
    main_term: Fraction
    B: int
    truncation_bound: float
    delta: int
    incomplete: int = 0

    @property
    def residual(self) -> float:
        return self.count / self.domain_size - float(self.main_term)

    def to_dict(self):
        d = asdict(self)
        d["main_term"] = str(self.main_term)
        d["main_term_numeric"] = float(self.main_term)
        d["residual"] = self.residual
        return d

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


def _scan(values, threshold: int):
    """For integer values (int64 array or list) decide square-freeness exactly.

    Returns (squarefree mask, exceptional mask, incomplete mask): exceptional
    means some prime p > threshold has p^2 | value. Zero is not square-free."""
    if isinstance(values, np.ndarray) and values.dtype == np.int64:
        return _scan_array(values, threshold)
    sf, ex, inc = [], [], []
    for v in values:
        v = int(v)
        if v == 0:
            sf.append(False); ex.append(False); inc.append(False)
            continue
        fac = factorize(v)
        if not fac.complete:
            sf.append(False); ex.append(False); inc.append(True)
            continue
        sf.append(all(e == 1 for _, e in fac.factors))
        ex.append(any(e >= 2 and p > threshold for p, e in fac.factors))
        inc.append(False)
    return np.array(sf), np.array(ex), np.array(inc)


def _scan_array(values, threshold):
    V = np.abs(values)
    zero = V == 0
    rem = np.where(zero, 1, V)
    vmax = int(rem.max()) if rem.size else 1
    L = 2
    while L**3 <= vmax:
        L *= 2
    L = min(L, isqrt(vmax) + 1)
    sq = np.zeros(V.shape, dtype=bool)
    ex = np.zeros(V.shape, dtype=bool)
    for p in primes_up_to(L).tolist():
        m = rem % p == 0
        if not m.any():
            continue
        idx = np.nonzero(m)[0]
        e = np.zeros(idx.size, dtype=np.int64)
        sub = rem[idx]
        while True:
            d = sub % p == 0
            if not d.any():
                break
            sub = np.where(d, sub // p, sub)
            e += d
        rem[idx] = sub
        hit = idx[e >= 2]
        sq[hit] = True
        if p > threshold:
            ex[hit] = True
    # remaining cofactors have all prime factors > L and at most two of them
    big = rem > 1
    r = rem[big]
    root = np.sqrt(r.astype(np.float64)).round().astype(np.int64)
    is_sq = np.zeros(r.size, dtype=bool)
    for k in (-1, 0, 1):
        c = root + k
        is_sq |= (c > 1) & (c * c == r)
    idx = np.nonzero(big)[0][is_sq]
    sq[idx] = True
    ex[idx[np.sqrt(rem[idx].astype(np.float64)) > threshold]] = True
    sq |= zero
    return ~sq, ex & ~zero, np.zeros(V.shape, dtype=bool)


def _values_univariate(P: IntPoly, N: int):
    bound = sum(abs(c) * N**i for i, c in enumerate(P.c))
    ns = np.arange(1, N + 1, dtype=np.int64)
    if bound < 2**62:
        acc = np.zeros(N, dtype=np.int64)
        for c in reversed(P.c):
            acc = acc * ns + c
        return acc
    return [P(n) for n in range(1, N + 1)]


def _values_bivariate(P, N, coprime):
    terms = _terms(P)
    r = np.arange(-N, N + 1, dtype=np.int64)
    X, Y = np.meshgrid(r, r, indexing="ij")
    X, Y = X.ravel(), Y.ravel()
    if coprime:
        keep = np.gcd(X, Y) == 1
        X, Y = X[keep], Y[keep]
    bound = sum(abs(c) * N ** (i + j) for (i, j), c in terms.items())
    if bound < 2**62:
        V = np.zeros(X.shape, dtype=np.int64)
        for (i, j), c in terms.items():
            V += c * X**i * Y**j
        return V
    xs, ys = X.tolist(), Y.tolist()
    return [sum(c * x**i * y**j for (i, j), c in terms.items()) for x, y in zip(xs, ys)]


def census(P, N: int, mode: str = UNIVARIATE, B: int = 1000) -> CensusReport:
    """Exact count of square-free values of P on the domain."""
    if N < 1:
        raise ValueError("N must be positive")
    if mode == UNIVARIATE:
        V = _values_univariate(P, N)
        thr = isqrt(N)
        deg = P.degree()
    elif mode in (BIVARIATE, BIVARIATE_COPRIME):
        V = _values_bivariate(P, N, mode == BIVARIATE_COPRIME)
        thr = N
        deg = _hom(P).degree if _is_hom(P) else max(i + j for i, j in _terms(P))
    else:
        raise ValueError(f"unknown mode {mode}")
    sf, ex, inc = _scan(V, thr)
    size = len(V)
    count = int(sf.sum())
    ninc = int(inc.sum())
    main = density_main_term(P, B, mode) if mode == UNIVARIATE or _is_hom(P) else Fraction(0)
    return CensusReport(N, mode, size, count, size - count - ninc, main, B,
                        truncation_error_bound(max(deg, 1), B), int(ex.sum()), ninc)


def _is_hom(P):
    try:
        _hom(P)
        return True
    except ValueError:
        return False


def delta_exceptional(P, N: int, mode: str = UNIVARIATE) -> int:
    """#{arguments with p^2 | P for some p > N^(1/2) (univariate) or p > N (bivariate)}."""
    if mode == UNIVARIATE:
        V = _values_univariate(P, N)
        thr = isqrt(N)
        # strictly p > sqrt(N): isqrt rounds down, so p > isqrt(N) is p > sqrt(N) unless N is a square
    else:
        V = _values_bivariate(P, N, mode == BIVARIATE_COPRIME)
        thr = N
    _, ex, _ = _scan(V, thr)
    return int(ex.sum())


def nonsquarefree_mask(P, N: int, mode: str = UNIVARIATE):
    V = _values_univariate(P, N) if mode == UNIVARIATE else _values_bivariate(P, N, mode == BIVARIATE_COPRIME)
    sf, _, _ = _scan(V, 0)
    return ~sf
