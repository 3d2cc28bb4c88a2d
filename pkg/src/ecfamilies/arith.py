"""Integer arithmetic: factorization and the multiplicative functions built on it."""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import comb, isqrt

import gmpy2
import numpy as np


class FactorizationIncomplete(ArithmeticError):
    """Raised when a value needs a complete factorization and none was found."""

    def __init__(self, n, cofactor):
        super().__init__(f"could not factor {n}: composite cofactor {cofactor} left")
        self.n = n
        self.cofactor = cofactor


@dataclass(frozen=True)
class Budget:
    """Effort policy for factorize."""
    trial_bound: int = 10**6
    rho_iterations: int = 3_000_000
    seed: int = 1


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: tuple = ()
    complete: bool = True
    cofactor: int = 1  # unfactored composite part when incomplete

    def value(self) -> int:
        n = self.sign * self.cofactor
        for p, e in self.factors:
            n *= p**e
        return n

    def require(self):
        if not self.complete:
            raise FactorizationIncomplete(self.value(), self.cofactor)
        return self

    def omega_big(self) -> int:
        return sum(e for _, e in self.factors)

    def primes(self):
        return [p for p, _ in self.factors]


@lru_cache(maxsize=8)
def primes_up_to(n: int) -> np.ndarray:
    """Primes <= n as an int64 array (sieve of Eratosthenes)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    s = np.ones(n + 1, dtype=bool)
    s[:2] = False
    s[4::2] = False
    for p in range(3, isqrt(n) + 1, 2):
        if s[p]:
            s[p * p :: 2 * p] = False
    return np.nonzero(s)[0].astype(np.int64)


@lru_cache(maxsize=4)
def _prime_list(n: int) -> tuple:
    return tuple(int(p) for p in primes_up_to(n))


def is_prime(n: int) -> bool:
    return n >= 2 and bool(gmpy2.is_prime(n, 30))


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def valuation(n: int, p: int) -> int:
    """v_p(n); raises on n = 0."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _brent(n: int, rng: random.Random, max_iter: int):
    """One Pollard-Brent run: a nontrivial factor, None on a degenerate cycle,
    0 when the iteration cap is hit."""
    if n % 2 == 0:
        return 2
    N = gmpy2.mpz(n)
    y = gmpy2.mpz(rng.randrange(1, n))
    c = gmpy2.mpz(rng.randrange(1, n))
    m = 128
    g = r = q = gmpy2.mpz(1)
    it = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % N
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % N
                q = q * abs(x - y) % N
            g = gmpy2.gcd(q, N)
            k += m
        r *= 2
        it += r
        if it > max_iter:
            return 0
    if g == N:
        while True:
            ys = (ys * ys + c) % N
            g = gmpy2.gcd(abs(x - ys), N)
            if g > 1:
                break
    if g == N:
        return None
    return int(g)


def _split(n: int, budget: Budget, rng: random.Random, out: dict) -> list:
    """Fully split n into primes recorded in out; returns leftover composites."""
    if n == 1:
        return []
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return []
    for _ in range(5):
        d = _brent(n, rng, budget.rho_iterations)
        if d == 0:
            break
        if d is not None:
            return _split(d, budget, rng, out) + _split(n // d, budget, rng, out)
    return [n]


def factorize(n: int, budget: Budget = DEFAULT_BUDGET) -> Factorization:
    """Factor a nonzero integer: trial division, then Pollard-Brent rho."""
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    found = {}
    for p in _prime_list(1000):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    if n > 1 and not is_prime(n) and budget.trial_bound > 1000:
        for p in _prime_list(budget.trial_bound):
            if p < 1000:
                continue
            if p * p > n:
                break
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                found[p] = e
                if is_prime(n):
                    break
    left = []
    if n > 1:
        rng = random.Random(budget.seed)
        left = _split(n, budget, rng, found)
    cof = 1
    for c in left:
        cof *= c
    return Factorization(sign, tuple(sorted(found.items())), not left, cof)


def factor_complete(n: int, budget: Budget = DEFAULT_BUDGET) -> Factorization:
    return factorize(n, budget).require()


def liouville(n: int, budget: Budget = DEFAULT_BUDGET) -> int:
    if n == 0:
        return 0
    f = factor_complete(n, budget)
    return -1 if f.omega_big() % 2 else 1


def moebius(n: int, budget: Budget = DEFAULT_BUDGET) -> int:
    if n == 0:
        raise ValueError("moebius(0) is undefined")
    f = factor_complete(n, budget)
    if any(e > 1 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def sq_part(n: int, budget: Budget = DEFAULT_BUDGET) -> int:
    """prod over p^2 | n of p^(v_p(n) - 1); sq(0) = 0."""
    if n == 0:
        return 0
    out = 1
    for p, e in factor_complete(n, budget).factors:
        if e >= 2:
            out *= p ** (e - 1)
    return out


def rad(n: int, budget: Budget = DEFAULT_BUDGET) -> int:
    out = 1
    for p, _ in factor_complete(n, budget).factors:
        out *= p
    return out


def is_squarefree(n: int, budget: Budget = DEFAULT_BUDGET) -> bool:
    return all(e == 1 for _, e in factor_complete(n, budget).factors)


def tau_k(n: int, k: int, budget: Budget = DEFAULT_BUDGET) -> int:
    """Number of ordered k-tuples of positive integers with product |n|."""
    if n == 0:
        raise ValueError("tau_k(0) is undefined")
    if k < 1:
        raise ValueError("k must be positive")
    out = 1
    for _, e in factor_complete(n, budget).factors:
        out *= comb(e + k - 1, k - 1)
    return out


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) with the standard conventions at n <= 0 and n even."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n), n odd positive
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def smallest_factor_table(n: int) -> np.ndarray:
    """spf[k] = least prime factor of k (spf[0] = spf[1] = 0)."""
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in primes_up_to(isqrt(n)):
        p = int(p)
        block = spf[p * p :: p]
        block[block == 0] = p
    idx = np.nonzero(spf == 0)[0]
    spf[idx] = idx
    spf[:2] = 0
    return spf


def big_omega_table(n: int) -> np.ndarray:
    """Omega(k) for 0 <= k <= n (value 0 at k = 0, 1)."""
    om = np.zeros(n + 1, dtype=np.int8)
    for p in primes_up_to(n):
        p = int(p)
        pk = p
        while pk <= n:
            om[pk::pk] += 1
            if pk > n // p:
                break
            pk *= p
    return om


def liouville_table(n: int) -> np.ndarray:
    """lambda(k) for 0 <= k <= n, with lambda(0) = 0."""
    lam = np.where(big_omega_table(n) % 2 == 1, -1, 1).astype(np.int8)
    lam[0] = 0
    return lam


def moebius_table(n: int) -> np.ndarray:
    """mu(k) for 0 <= k <= n; entry 0 is set to 0."""
    mu = np.ones(n + 1, dtype=np.int8)
    for p in primes_up_to(n):
        p = int(p)
        mu[p::p] *= -1
        if p <= n // p:
            mu[p * p :: p * p] = 0
    mu[0] = 0
    return mu
