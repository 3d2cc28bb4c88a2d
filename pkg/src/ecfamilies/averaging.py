"""Finite-N averages and autocorrelations over progressions, lattice cosets and sectors."""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, NamedTuple

import numpy as np

from .arith import DEFAULT_BUDGET, FactorizationIncomplete, is_prime, liouville, moebius, liouville_table, moebius_table, primes_up_to

SINGULAR = "singular"
UNDETERMINED = "undetermined"
INCOMPLETE = "factorization_incomplete"


class Outcome(NamedTuple):
    """A sample value with a tag; value None means the sample is excluded."""
    value: int | None
    tag: str | None = None


# ---------------------------------------------------------------- domains

def _hnf(v1, v2):
    """Upper-triangular basis ((a, b), (0, d)) of the lattice spanned by v1, v2 (as columns)."""
    (x1, y1), (x2, y2) = v1, v2
    det = x1 * y2 - x2 * y1
    if det == 0:
        raise ValueError("degenerate lattice")
    # d = gcd of the y-coordinates; combine columns with extended Euclid
    g, s, t = _xgcd(y1, y2)
    col = (s * x1 + t * x2, g)  # has y = g
    d = abs(g)
    a = abs(det) // d
    b = col[0] if g > 0 else -col[0]
    return a, b % a, d


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


@dataclass(frozen=True)
class LatticeCoset:
    """offset + L, L spanned by (a, 0) and (b, d) with a, d > 0, 0 <= b < a."""
    a: int = 1
    b: int = 0
    d: int = 1
    ox: int = 0
    oy: int = 0

    def __post_init__(self):
        if self.a <= 0 or self.d <= 0 or not 0 <= self.b < self.a:
            raise ValueError("basis not in Hermite normal form")
        if not (0 <= self.oy < self.d and 0 <= self.ox < self.a):
            raise ValueError("offset not reduced")

    @classmethod
    def from_generators(cls, v1, v2, offset=(0, 0)) -> LatticeCoset:
        a, b, d = _hnf(v1, v2)
        ox, oy = offset
        q = oy // d
        ox, oy = ox - q * b, oy - q * d
        return cls(a, b, d, ox % a, oy)

    @classmethod
    def full(cls) -> LatticeCoset:
        return cls()

    @property
    def basis(self):
        return ((self.a, self.b), (0, self.d))

    @property
    def index(self) -> int:
        return self.a * self.d

    def contains(self, x: int, y: int) -> bool:
        u, v = x - self.ox, y - self.oy
        if v % self.d:
            return False
        return (u - self.b * (v // self.d)) % self.a == 0

    def mask(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        U, V = X - self.ox, Y - self.oy
        ok = V % self.d == 0
        return ok & ((U - self.b * (V // self.d)) % self.a == 0)

    def describe(self) -> str:
        return f"({self.ox},{self.oy})+<({self.a},0),({self.b},{self.d})>"


def _half(u, p):
    """0 if p lies in the half-open half-turn [u, -u) counterclockwise from u, else 1."""
    c = u[0] * p[1] - u[1] * p[0]
    if c > 0 or (c == 0 and u[0] * p[0] + u[1] * p[1] > 0):
        return 0
    return 1


def _ccw_less(u, a, b):
    """Counterclockwise angle from u to a is smaller than from u to b."""
    ha, hb = _half(u, a), _half(u, b)
    if ha != hb:
        return ha < hb
    return a[0] * b[1] - a[1] * b[0] > 0


def _same_dir(a, b):
    return a[0] * b[1] - a[1] * b[0] == 0 and a[0] * b[0] + a[1] * b[1] > 0


@dataclass(frozen=True)
class Arc:
    """Angular interval from direction start, counterclockwise to end."""
    start: tuple
    end: tuple
    include_start: bool = True
    include_end: bool = False
    full_turn: bool = False  # start == end meaning the whole circle

    def contains(self, x, y) -> bool:
        p = (x, y)
        if p == (0, 0):
            return False
        if _same_dir(p, self.start):
            return self.include_start
        if self.full_turn:
            return True
        if _same_dir(p, self.end):
            return self.include_end
        return _ccw_less(self.start, p, self.end)


def _to_int_dir(v):
    a, b = Fraction(v[0]), Fraction(v[1])
    den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
    return (int(a * den), int(b * den))


@dataclass(frozen=True)
class Sector:
    """Finite union of arcs at the origin."""
    arcs: tuple

    @classmethod
    def arc(cls, start, end, include_start=True, include_end=False) -> Sector:
        s, e = _to_int_dir(start), _to_int_dir(end)
        if s == (0, 0) or e == (0, 0):
            raise ValueError("direction vectors must be nonzero")
        if _same_dir(s, e) and not include_start:
            raise ValueError("empty sector")
        return cls((Arc(s, e, include_start, include_end, _same_dir(s, e)),))

    @classmethod
    def full(cls) -> Sector:
        return cls((Arc((1, 0), (1, 0), True, False, True),))

    @classmethod
    def quadrant(cls, signs: str) -> Sector:
        """Open quadrant, e.g. '++' for x > 0, y > 0."""
        table = {"++": ((1, 0), (0, 1)), "-+": ((0, 1), (-1, 0)), "--": ((-1, 0), (0, -1)), "+-": ((0, -1), (1, 0))}
        s, e = table[signs]
        return cls((Arc(s, e, False, False),))

    @classmethod
    def minus_axes(cls) -> Sector:
        return cls(tuple(cls.quadrant(q).arcs[0] for q in ("++", "-+", "--", "+-")))

    @classmethod
    def union(cls, *sectors) -> Sector:
        return cls(tuple(a for s in sectors for a in s.arcs))

    def contains(self, x: int, y: int) -> bool:
        return any(a.contains(x, y) for a in self.arcs)

    def mask(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        out = np.zeros(X.shape, dtype=bool)
        for a in self.arcs:
            out |= _arc_mask(a, X, Y)
        return out

    def describe(self) -> str:
        parts = []
        for a in self.arcs:
            if a.full_turn:
                parts.append("full")
            else:
                lb = "[" if a.include_start else "("
                rb = "]" if a.include_end else ")"
                parts.append(f"{lb}{a.start},{a.end}{rb}")
        return "U".join(parts)


def _arc_mask(a: Arc, X, Y):
    nz = (X != 0) | (Y != 0)
    u, e = a.start, a.end

    def same(v):
        return (v[0] * Y - v[1] * X == 0) & (v[0] * X + v[1] * Y > 0)

    def half(v):
        c = v[0] * Y - v[1] * X
        return np.where((c > 0) | ((c == 0) & (v[0] * X + v[1] * Y > 0)), 0, 1)

    on_start = same(u)
    if a.full_turn:
        inside = np.ones(X.shape, dtype=bool)
    else:
        he = _half(u, e)
        hp = half(u)
        cross = X * e[1] - Y * e[0]
        inside = (hp < he) | ((hp == he) & (cross > 0))
        inside = np.where(same(e), a.include_end, inside)
    inside = np.where(on_start, a.include_start, inside)
    return inside & nz


def domain_points(S: Sector, L: LatticeCoset, N: int, coprime: bool = True):
    """Arrays (X, Y) of the points of S ∩ L ∩ [-N, N]^2, x outer, y inner ascending."""
    r = np.arange(-N, N + 1, dtype=np.int64)
    X, Y = np.meshgrid(r, r, indexing="ij")
    X, Y = X.ravel(), Y.ravel()
    m = L.mask(X, Y) & S.mask(X, Y)
    if coprime:
        m &= np.gcd(X, Y) == 1
    return X[m], Y[m]


# ---------------------------------------------------------------- reports

@dataclass
class AverageReport:
    total: Fraction = Fraction(0)
    count: int = 0
    skipped: dict = field(default_factory=lambda: {UNDETERMINED: 0, INCOMPLETE: 0})
    singular: int = 0
    domain: str = ""
    buckets: dict = field(default_factory=dict)

    @property
    def value(self) -> Fraction | None:
        return Fraction(self.total) / self.count if self.count else None

    @property
    def enumerated(self) -> int:
        return self.count + sum(self.skipped.values())

    def add(self, v, bucket=None):
        tag = None
        if isinstance(v, Outcome):
            v, tag = v.value, v.tag
        if v is None:
            tag = tag or UNDETERMINED
            self.skipped[tag] = self.skipped.get(tag, 0) + 1
            return
        if tag == SINGULAR:
            self.singular += 1
        self.total += v
        self.count += 1
        if bucket is not None:
            t, c = self.buckets.get(bucket, (0, 0))
            self.buckets[bucket] = (t + v, c + 1)

    def merge(self, other: AverageReport) -> AverageReport:
        sk = dict(self.skipped)
        for k, v in other.skipped.items():
            sk[k] = sk.get(k, 0) + v
        bk = dict(self.buckets)
        for k, (t, c) in other.buckets.items():
            t0, c0 = bk.get(k, (0, 0))
            bk[k] = (t0 + t, c0 + c)
        return AverageReport(
            Fraction(self.total) + Fraction(other.total), self.count + other.count, sk,
            self.singular + other.singular, self.domain or other.domain, bk,
        )

    def to_dict(self):
        v = self.value
        return {
            "domain": self.domain,
            "value": None if v is None else str(v),
            "value_float": None if v is None else float(v),
            "count": self.count,
            "singular": self.singular,
            "skipped": dict(sorted(self.skipped.items())),
            "buckets": {str(k): {"sum": str(t), "count": c} for k, (t, c) in sorted(self.buckets.items())},
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def csv_rows(self, estimator: str):
        sk = self.skipped
        rows = [(self.domain, estimator, str(self.value), self.count, sk.get(UNDETERMINED, 0), sk.get(INCOMPLETE, 0), self.singular)]
        for k, (t, c) in sorted(self.buckets.items()):
            rows.append((f"{self.domain}|{k}", estimator, str(Fraction(t) / c), c, 0, 0, 0))
        return rows


CSV_HEADER = ("domain", "estimator", "value", "count", "undetermined", "factorization_incomplete", "singular")


def _safe(f, *args):
    try:
        return f(*args)
    except FactorizationIncomplete:
        return Outcome(None, INCOMPLETE)


def _chunks(items, jobs):
    n = max(1, len(items) // (4 * jobs) + 1)
    return [items[i : i + n] for i in range(0, len(items), n)]


def _run(worker, chunks, jobs):
    reports = []
    if jobs <= 1 or len(chunks) <= 1:
        reports = [worker(c) for c in chunks]
    else:
        with ProcessPoolExecutor(jobs) as ex:
            reports = list(ex.map(worker, chunks))
    out = AverageReport()
    for r in reports:
        out = out.merge(r)
    return out


class _ProgWorker:
    def __init__(self, f, k=None):
        self.f, self.k = f, k

    def __call__(self, ns):
        rep = AverageReport()
        for n in ns:
            a = _safe(self.f, n)
            if self.k is not None:
                b = _safe(self.f, n + self.k)
                a = _product(a, b)
            rep.add(a)
        return rep


class _PairWorker:
    def __init__(self, f, shift=None):
        self.f, self.shift = f, shift

    def __call__(self, pts):
        rep = AverageReport()
        for x, y in pts:
            a = _safe(self.f, x, y)
            if self.shift is not None:
                p, q = self.shift
                # y/x + p/q = (q*y + p*x) / (q*x)
                x2, y2 = q * x, q * y + p * x
                g = gcd(x2, y2)
                b = _safe(self.f, x2 // g, y2 // g)
                a = _product(a, b)
            rep.add(a)
        return rep


def _product(a, b):
    ta = tb = None
    if isinstance(a, Outcome):
        a, ta = a.value, a.tag
    if isinstance(b, Outcome):
        b, tb = b.value, b.tag
    if a is None or b is None:
        tag = ta if a is None else tb
        return Outcome(None, tag or UNDETERMINED)
    tag = SINGULAR if SINGULAR in (ta, tb) else None
    return Outcome(a * b, tag)


def _progression(a, m, N):
    if m < 1 or N < m:
        raise ValueError("need m >= 1 and N >= m")
    start = a % m or m
    return list(range(start, N + 1, m))


def av_progression(f: Callable, a: int, m: int, N: int, jobs: int = 1) -> AverageReport:
    """Average of f(n) over 1 <= n <= N, n = a mod m (sum over count)."""
    ns = _progression(a, m, N)
    rep = _run(_ProgWorker(f), _chunks(ns, jobs), jobs)
    rep.domain = f"{a}+{m}Z,N={N}"
    return rep


def autocov_progression(f: Callable, a: int, m: int, k: int, N: int, jobs: int = 1) -> AverageReport:
    """Average of f(n) f(n+k) over the progression."""
    if k == 0:
        raise ValueError("k must be nonzero")
    ns = _progression(a, m, N)
    rep = _run(_ProgWorker(f, k), _chunks(ns, jobs), jobs)
    rep.domain = f"{a}+{m}Z,N={N},k={k}"
    return rep


def _pairs(S, L, N):
    X, Y = domain_points(S, L, N)
    return list(zip(X.tolist(), Y.tolist()))


def av_rational(f: Callable, S: Sector, L: LatticeCoset, N: int, jobs: int = 1) -> AverageReport:
    """Average of f(x, y) over coprime (x, y) in S ∩ L ∩ [-N, N]^2; f sees t = y/x."""
    if N < 1:
        raise ValueError("N must be positive")
    rep = _run(_PairWorker(f), _chunks(_pairs(S, L, N), jobs), jobs)
    rep.domain = f"S={S.describe()},L={L.describe()},N={N}"
    return rep


def autocorr_rational(f: Callable, S: Sector, L: LatticeCoset, t0, N: int, jobs: int = 1) -> AverageReport:
    """Average of f(y/x) f(y/x + t0) over the coprime domain."""
    t0 = Fraction(t0)
    if t0 == 0:
        raise ValueError("t0 must be nonzero")
    w = _PairWorker(f, (t0.numerator, t0.denominator))
    rep = _run(w, _chunks(_pairs(S, L, N), jobs), jobs)
    rep.domain = f"S={S.describe()},L={L.describe()},N={N},t0={t0}"
    return rep


# ---------------------------------------------------------------- lambda of polynomial values

def liouville_array(values, budget=DEFAULT_BUDGET) -> tuple[np.ndarray, int]:
    """lambda of each entry (int64 array, |v| < 2^62); returns (lambdas, incomplete count).

    Vectorized trial division by primes up to sqrt(max|v|) (capped), with a
    per-entry fallback for cofactors that remain undecided."""
    v = np.abs(np.asarray(values, dtype=np.int64))
    lam = np.where(v == 0, 0, 1).astype(np.int8)
    if v.size == 0:
        return lam, 0
    vmax = int(v.max())
    B = min(isqrt(vmax) + 1, 200_000)
    parity = np.zeros(v.shape, dtype=np.int8)
    rem = v.copy()
    rem[rem == 0] = 1
    for p in primes_up_to(B):
        p = int(p)
        if p * p > vmax:
            break
        m = rem % p == 0
        while m.any():
            idx = np.nonzero(m)[0]
            rem[idx] //= p
            parity[idx] ^= 1
            m2 = rem[idx] % p == 0
            m = np.zeros(v.shape, dtype=bool)
            m[idx[m2]] = True
    # cofactor below B^2 is 1 or a prime
    big = rem >= B * B
    small = (rem > 1) & ~big
    parity[small] ^= 1
    bad = 0
    for i in np.nonzero(big)[0]:
        r = int(rem[i])
        try:
            if r < B**3:
                # no prime factor <= B: either prime or a product of two primes
                if is_prime(r):
                    parity[i] ^= 1
            elif liouville(r, budget) == -1:
                parity[i] ^= 1
        except FactorizationIncomplete:
            bad += 1
            lam[i] = 2  # marker, removed by the caller
    lam = np.where(lam == 2, 2, np.where(lam == 0, 0, np.where(parity == 1, -1, 1))).astype(np.int8)
    return lam, bad


def _eval_bipoly_array(terms, A, B):
    """Evaluate an integer bivariate polynomial on int64 arrays, as Python ints when large."""
    bound = 0
    amax = int(np.abs(A).max()) if A.size else 0
    bmax = int(np.abs(B).max()) if B.size else 0
    for (i, j), c in terms.items():
        bound += abs(c) * amax**i * bmax**j
    if bound < 2**62:
        out = np.zeros(A.shape, dtype=np.int64)
        for (i, j), c in terms.items():
            out += int(c) * A**i * B**j
        return out
    return None


def sweep_lambda_poly(P, N: int, S: Sector | None = None, L: LatticeCoset | None = None, coprime: bool = True,
                      max_value: int | None = None, func: str = "liouville", a: int = 1, m: int = 1) -> AverageReport:
    """Average of lambda (or mu) of P over a domain.

    P is an IntPoly (univariate, n in 1..N with n = a mod m) or a BiPoly with
    integer coefficients (bivariate, S ∩ L ∩ [-N, N]^2, optionally coprime).
    With max_value, the bivariate domain is instead 1 <= a, b with
    0 < P(a, b) <= max_value (used for a^2 + b^4)."""
    from .poly import IntPoly, factor_q
    from .polytext import BiPoly

    if isinstance(P, IntPoly):
        _, facs = factor_q(P)
        if all(mult % 2 == 0 for _, mult in facs):
            raise ValueError("P is a constant times a square")
        ns = np.arange(a % m or m, N + 1, m, dtype=np.int64)
        rep = AverageReport(domain=f"{a}+{m}Z,N={N},{func}")
        V = _eval_bipoly_array({(i, 0): c for i, c in enumerate(P.c) if c}, ns, ns)
        if V is None:
            _accumulate_values(rep, [int(P(int(n))) for n in ns], func)
        else:
            _accumulate_array(rep, V, func)
        return rep
    if not isinstance(P, BiPoly):
        raise TypeError("P must be an IntPoly or BiPoly")
    if not P.is_integral():
        raise ValueError("integer coefficients required")
    terms = P.int_terms()
    if max_value is not None:
        amax = N
        r = np.arange(1, amax + 1, dtype=np.int64)
        A, B = np.meshgrid(r, r, indexing="ij")
        A, B = A.ravel(), B.ravel()
        V = _eval_bipoly_array(terms, A, B)
        keep = (V > 0) & (V <= max_value)
        if coprime:
            keep &= np.gcd(A, B) == 1
        V = V[keep]
        rep = AverageReport(domain=f"a,b>=1,P<={max_value},{func}")
        _accumulate_array(rep, V, func, max_value)
        return rep
    S = S or Sector.full()
    L = L or LatticeCoset.full()
    X, Y = domain_points(S, L, N, coprime)
    rep = AverageReport(domain=f"S={S.describe()},L={L.describe()},N={N},coprime={coprime},{func}")
    degs = P.total_degrees()
    if len(degs) == 1 and func == "liouville":
        # lambda is completely multiplicative: use the factorization over Q
        from .polytext import hom_from_rational
        from .poly import factor_hom

        scal, H = hom_from_rational(P)
        content, facs = factor_hom(H)
        c = scal * content
        if all(mult % 2 == 0 for _, mult in facs):
            raise ValueError("P is a constant times a square")
        sign_lam = liouville(abs(c.numerator)) * liouville(c.denominator) if c != 0 else 0
        lam = np.full(X.shape, sign_lam, dtype=np.int8)
        bad = np.zeros(X.shape, dtype=bool)
        for F, mult in facs:
            if mult % 2 == 0:
                zero = _hom_eval_array(F, X, Y) == 0
                lam = np.where(zero, 0, lam)
                continue
            vals = _hom_eval_array(F, X, Y)
            if vals is None:
                raise OverflowError("values exceed int64; use a smaller N")
            lf, nbad = _lambda_lookup(vals)
            bad |= lf == 2
            lam = (lam * np.where(lf == 2, 1, lf)).astype(np.int8)
        rep.skipped[INCOMPLETE] += int(bad.sum())
        lam = lam[~bad]
        rep.total = Fraction(int(lam.sum(dtype=np.int64)))
        rep.count = int(lam.size)
        return rep
    V = _eval_bipoly_array(terms, X, Y)
    if V is None:
        raise OverflowError("values exceed int64; use a smaller N")
    _accumulate_array(rep, V, func)
    return rep


def _hom_eval_array(F, X, Y):
    terms = {(F.degree - i, i): c for i, c in enumerate(F.c) if c}
    return _eval_bipoly_array(terms, X, Y)


_TABLE_LIMIT = 4_000_000


def _lambda_lookup(vals):
    """lambda for an int64 array, by table when small, else by trial division."""
    av = np.abs(vals)
    vmax = int(av.max()) if av.size else 0
    if vmax <= _TABLE_LIMIT:
        return liouville_table(max(vmax, 1))[av], 0
    return liouville_array(vals)


def _accumulate_array(rep, V, func, bound=None):
    if func == "moebius":
        vmax = int(np.abs(V).max()) if V.size else 1
        if vmax <= 50_000_000:
            mu = moebius_table(max(vmax, 1))[np.abs(V)]
            rep.total = Fraction(int(mu.sum(dtype=np.int64)))
            rep.count = int(V.size)
            return
        _accumulate_values(rep, V.tolist(), func)
        return
    lam, nbad = _lambda_lookup(V)
    keep = lam != 2
    rep.skipped[INCOMPLETE] += int((~keep).sum())
    rep.total = Fraction(int(lam[keep].sum(dtype=np.int64)))
    rep.count = int(keep.sum())


def _accumulate_values(rep, vals, func):
    fn = liouville if func == "liouville" else moebius
    for v in vals:
        v = int(v)
        if v == 0 and func == "moebius":
            rep.add(Outcome(None, "zero"))
            continue
        try:
            rep.add(fn(v))
        except FactorizationIncomplete:
            rep.add(Outcome(None, INCOMPLETE))


def coprime_pair_count(L: LatticeCoset, N: int) -> int:
    X, Y = domain_points(Sector.full(), L, N, True)
    return int(X.size)
