import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ecfamilies.arith import (
    Budget,
    FactorizationIncomplete,
    big_omega_table,
    factorize,
    is_squarefree,
    kronecker,
    liouville,
    liouville_table,
    moebius,
    moebius_table,
    primes_up_to,
    rad,
    sq_part,
    tau_k,
    valuation,
)

import oracles

nonzero = st.integers(-10**15, 10**15).filter(lambda n: n != 0)


@given(nonzero)
@settings(max_examples=200)
def test_factorize_reconstructs(n):
    f = factorize(n)
    assert f.complete
    assert f.value() == n
    assert all(sympy.isprime(p) for p in f.primes())


@given(nonzero)
@settings(max_examples=200)
def test_liouville_moebius_match_sympy(n):
    assert liouville(n) == oracles.liouville(n)
    assert moebius(n) == oracles.moebius(n)


def test_liouville_zero_convention():
    assert liouville(0) == 0
    with pytest.raises(ValueError):
        moebius(0)


def test_semiprime_of_large_primes():
    p, q = 1000000007, 998244353
    f = factorize(p * q * 12)
    assert f.factors == ((2, 2), (3, 1), (q, 1), (p, 1))


def test_incomplete_factorization_is_reported():
    p, q = 10**12 + 39, 10**12 + 61
    f = factorize(p * q, Budget(trial_bound=1000, rho_iterations=10))
    assert not f.complete
    assert f.cofactor == p * q
    with pytest.raises(FactorizationIncomplete):
        liouville(p * q, Budget(trial_bound=1000, rho_iterations=10))


def test_sq_part_and_rad():
    assert sq_part(2**5 * 3 * 7**2) == 2**4 * 7
    assert rad(2**5 * 3 * 7**2) == 42
    assert sq_part(0) == 0
    assert is_squarefree(30) and not is_squarefree(12)


@given(st.integers(1, 10**6), st.integers(1, 5))
@settings(max_examples=100)
def test_tau_k_counts_ordered_factorizations(n, k):
    # tau_k = sum over d | n of tau_{k-1}(n/d)
    if k == 1:
        assert tau_k(n, 1) == 1
    else:
        assert tau_k(n, k) == sum(tau_k(n // d, k - 1) for d in sympy.divisors(n))


@given(st.integers(-500, 500), st.sampled_from(list(sympy.primerange(3, 200))))
def test_kronecker_is_legendre_at_odd_primes(a, p):
    assert kronecker(a, p) == oracles.legendre(a, p)


def test_kronecker_small_table():
    # (a/2) is 0 for even a, 1 for a = +-1 mod 8, -1 for a = +-3 mod 8
    assert [kronecker(a, 2) for a in range(8)] == [0, 1, 0, -1, 0, -1, 0, 1]
    assert kronecker(-1, -1) == -1
    assert kronecker(5, 0) == 0 and kronecker(-1, 0) == 1


@given(st.integers(-10**9, 10**9).filter(lambda n: n != 0), st.sampled_from([2, 3, 5, 7]))
def test_valuation(n, p):
    v = valuation(n, p)
    assert n % p**v == 0 and n % p ** (v + 1) != 0


def test_tables_match_pointwise():
    n = 3000
    lam, mu, om = liouville_table(n), moebius_table(n), big_omega_table(n)
    assert lam[0] == 0 and mu[0] == 0
    for k in range(1, n + 1):
        assert lam[k] == liouville(k)
        assert mu[k] == moebius(k)
        assert om[k] == sum(sympy.factorint(k).values())
    assert list(primes_up_to(30)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_mu_lambda_convolution_identity():
    # sum_{d | n} |mu(d)| lambda(n/d) vanishes for n > 1
    n = 10**4
    lam, mu = liouville_table(n), moebius_table(n)
    acc = [0] * (n + 1)
    for d in range(1, n + 1):
        if mu[d]:
            for m in range(d, n + 1, d):
                acc[m] += int(lam[m // d])
    assert acc[1] == 1
    assert not any(acc[2:])
