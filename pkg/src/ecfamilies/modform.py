"""Class numbers, Fricke traces on S_k(N) and signed newform counts."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .arith import moebius


class BadDiscriminant(ValueError):
    pass


class Inapplicable(ValueError):
    pass


class ExcludedLevel(ValueError):
    pass


def _check_disc(D: int):
    if D >= 0 or D % 4 not in (0, 1):
        raise BadDiscriminant(f"{D} is not a negative discriminant")


@lru_cache(maxsize=None)
def class_number(D: int) -> int:
    """Number of reduced primitive positive definite forms (a, b, c) of discriminant D.

    Reduced: |b| <= a <= c, and b >= 0 whenever |b| = a or a = c."""
    _check_disc(D)
    h = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                h += 1
        a += 1
    return h


def class_numbers_4n(nmax: int) -> np.ndarray:
    """h(-4N) for 0 <= N <= nmax (entry 0 unused), by one pass over reduced forms.

    Forms of discriminant -4N have b = 2B even and N = ac - B^2."""
    h = np.zeros(nmax + 1, dtype=np.int64)
    amax = isqrt(4 * nmax // 3) + 1
    for a in range(1, amax + 1):
        for B2 in range(-a + 1, a + 1):
            if B2 % 2:
                continue
            B = B2 // 2
            # c >= a, and N = a c - B^2 <= nmax
            cmax = (nmax + B * B) // a
            if cmax < a:
                continue
            cs = np.arange(a, cmax + 1, dtype=np.int64)
            if B2 < 0:
                cs = cs[cs != a]
            g = np.gcd(np.gcd(a, B2), cs)
            cs = cs[g == 1]
            Ns = a * cs - B * B
            Ns = Ns[(Ns >= 1) & (Ns <= nmax)]
            np.add.at(h, Ns, 1)
    return h


def epsilon(N: int) -> Fraction:
    if N < 1:
        raise ValueError("N must be positive")
    r = N % 8
    if r == 7:
        return Fraction(2)
    if r == 3:
        return Fraction(4, 3)
    return Fraction(1)


def _check_weight(k: int):
    if k < 2 or k % 2:
        raise ValueError("k must be even and at least 2")


def fricke_trace(N: int, k: int, h: int | None = None) -> Fraction:
    """Trace of the Fricke involution W_N on S_k(N).

    N > 4 uses the class-number formula; N = 1, 2, 3 use the genus-zero
    closed forms (the space is empty for k = 2); N = 4 is not covered."""
    _check_weight(k)
    if N < 1:
        raise ValueError("N must be positive")
    if N == 4:
        raise Inapplicable("N = 4 is not covered by the formula")
    if N <= 3:
        if k == 2:
            return Fraction(0)
        if N == 1:
            return Fraction(k // 12 - (1 if k % 12 == 2 else 0))
        if N == 2:
            return Fraction(3 * (k // 4) - 1)
        return 1 - 3 * Fraction(k % 3, 3)
    if h is None:
        h = class_number(-4 * N)
    half = epsilon(N) * h / 2
    if k == 2:
        return 1 - half
    return half if k % 4 == 0 else -half


def excluded_shape(N: int) -> bool:
    """True if N = R^2, 2R^2, 3R^2 or 4R^2 with R square-free."""
    for m in (1, 2, 3, 4):
        if N % m == 0:
            q = N // m
            r = isqrt(q)
            if r * r == q and moebius(r) != 0:
                return True
    return False


def eta_sum(N: int, k: int, hs=None) -> Fraction:
    """Sum of Fricke eigenvalues over newforms of level N, by Mobius inversion of traces."""
    _check_weight(k)
    if excluded_shape(N):
        raise ExcludedLevel(f"N = {N} has an excluded shape")
    total = Fraction(0)
    R = 1
    while R * R <= N:
        if N % (R * R) == 0:
            mu = moebius(R)
            if mu:
                M = N // (R * R)
                h = None if hs is None or M <= 4 else int(hs[M])
                total += mu * fricke_trace(M, k, h)
        R += 1
    return total


@dataclass(frozen=True)
class TraceReport:
    N: int
    k: int
    h: int | None
    epsilon: Fraction
    trace: Fraction | None
    eta_sum: Fraction | None
    applicable: bool

    def to_dict(self):
        def s(v):
            return None if v is None else str(v)
        return {"N": self.N, "k": self.k, "h": self.h, "epsilon": str(self.epsilon),
                "trace": s(self.trace), "eta_sum": s(self.eta_sum), "applicable": self.applicable}


CSV_HEADER = ("N", "k", "h", "epsilon", "trace", "eta_sum", "applicable")


def trace_report(N: int, k: int, hs=None) -> TraceReport:
    h = None if N <= 4 else (int(hs[N]) if hs is not None else class_number(-4 * N))
    try:
        tr = fricke_trace(N, k, h)
    except Inapplicable:
        tr = None
    try:
        es = eta_sum(N, k, hs)
    except (ExcludedLevel, Inapplicable):
        es = None
    return TraceReport(N, k, h, epsilon(N), tr, es, tr is not None and es is not None)


def trace_table(Ns, k: int) -> list[TraceReport]:
    Ns = list(Ns)
    hs = class_numbers_4n(max(Ns)) if Ns else None
    return [trace_report(N, k, hs) for N in Ns]


def reports_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in reports:
        d = r.to_dict()
        w.writerow(["" if d[c] is None else d[c] for c in CSV_HEADER])
    return buf.getvalue()
