import math

import numpy as np
import pytest

from pntavg import sieve

from oracles import is_prime_trial, psi_lcm, psi_lcm_all


def test_lambda_values(table_small):
    lam = table_small.lam
    assert lam[1] == 0.0
    assert lam[2] == pytest.approx(math.log(2), abs=1e-15)
    assert lam[6] == 0.0
    assert lam[9] == pytest.approx(math.log(3), abs=1e-15)  # 9 = 3^2
    assert lam[12] == 0.0
    assert lam[128] == pytest.approx(math.log(2), abs=1e-15)  # 2^7


def test_lambda_positive_iff_prime_power(table_small):
    for n in range(1, 500):
        is_pp = False
        for p in range(2, n + 1):
            if is_prime_trial(p):
                m = p
                while m < n:
                    m *= p
                if m == n:
                    is_pp = True
                    break
        assert (table_small.lam[n] > 0) == (is_pp and n > 1), n


def test_psi_trivial(table_small):
    assert sieve.psi(table_small, 1) == 0.0
    assert sieve.psi(table_small, 2) == pytest.approx(math.log(2), abs=1e-15)
    # psi(10) = log lcm(1..10) = log 2520
    assert sieve.psi(table_small, 10) == pytest.approx(math.log(2520), abs=1e-12)


def test_psi_matches_lcm_oracle(table_small):
    ref = psi_lcm_all(2000)
    for n in range(1, 2001):
        assert abs(sieve.psi(table_small, n) - ref[n]) <= 1e-9, n


def test_psi_prefix_monotone(table_small):
    assert np.all(np.diff(table_small.psi_prefix[1:]) >= 0)


def test_theta_and_pi(table_small):
    assert sieve.theta(table_small, 1) == 0.0
    assert sieve.prime_pi(table_small, 10) == 4
    # product of primes <= 10 is 210
    assert sieve.theta(table_small, 10) == pytest.approx(math.log(210), abs=1e-12)


def test_pi_against_trial_division():
    table = sieve.build_lambda_table(10_000)
    count = 0
    for n in range(1, 10_001):
        if is_prime_trial(n):
            count += 1
        assert sieve.prime_pi(table, n) == count, n


def test_psi_theta_decomposition(table_small):
    # psi(n) - theta(n) = sum_{m >= 2} theta(floor(n^(1/m)))
    for n in (100, 1000):
        total = 0.0
        m = 2
        while 2**m <= n:
            root = int(round(n ** (1.0 / m)))
            while root**m > n:
                root -= 1
            while (root + 1) ** m <= n:
                root += 1
            total += sieve.theta(table_small, root)
            m += 1
        diff = sieve.psi(table_small, n) - sieve.theta(table_small, n)
        assert diff == pytest.approx(total, abs=1e-9)
        assert sieve.psi(table_small, n) >= sieve.theta(table_small, n)


def test_error_series(table_small):
    series = sieve.error_series(table_small)
    assert series.r[1] == -1.0
    assert series.r[10] == pytest.approx(psi_lcm(10) - 10, abs=1e-9)
    # r(n) - r(n-1) = Lambda(n) - 1 within an ulp
    for n in range(2, 2001):
        lhs = series.r[n] - series.r[n - 1]
        rhs = table_small.lam[n] - 1.0
        assert lhs == pytest.approx(rhs, abs=1e-10), n


def test_invalid_arguments(table_small):
    with pytest.raises(ValueError):
        sieve.build_lambda_table(0)
    with pytest.raises(ValueError):
        sieve.psi(table_small, 0)
    with pytest.raises(ValueError):
        sieve.psi(table_small, table_small.n_max + 1)
    with pytest.raises(ValueError):
        sieve.error_series(table_small, table_small.n_max + 1)


def test_determinism():
    t1 = sieve.build_lambda_table(300)
    t2 = sieve.build_lambda_table(300)
    assert np.array_equal(t1.lam, t2.lam)
    assert np.array_equal(t1.psi_prefix, t2.psi_prefix)


def test_table_immutable(table_small):
    with pytest.raises(ValueError):
        table_small.lam[2] = 1.0


def test_cache_roundtrip(tmp_path, table_small):
    path = tmp_path / "sieve.bin"
    sieve.write_cache(table_small, path)
    loaded = sieve.read_cache(path)
    assert loaded.n_max == table_small.n_max
    assert np.array_equal(loaded.lam, table_small.lam)
    assert np.array_equal(loaded.psi_prefix, table_small.psi_prefix)
    assert np.array_equal(loaded.is_prime, table_small.is_prime)


def test_cache_bad_magic(tmp_path, table_small):
    path = tmp_path / "sieve.bin"
    sieve.write_cache(table_small, path)
    data = bytearray(path.read_bytes())
    data[0] ^= 0xFF
    path.write_bytes(bytes(data))
    with pytest.raises(sieve.CacheError):
        sieve.read_cache(path)


def test_cache_corrupted_payload(tmp_path, table_small):
    path = tmp_path / "sieve.bin"
    sieve.write_cache(table_small, path)
    data = bytearray(path.read_bytes())
    data[-5] ^= 0x41  # flip bits inside a Lambda value
    path.write_bytes(bytes(data))
    with pytest.raises(sieve.CacheError):
        sieve.read_cache(path)


def test_cache_truncated(tmp_path, table_small):
    path = tmp_path / "sieve.bin"
    sieve.write_cache(table_small, path)
    path.write_bytes(path.read_bytes()[:-8])
    with pytest.raises(sieve.CacheError):
        sieve.read_cache(path)
