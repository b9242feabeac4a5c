"""Von Mangoldt sieve and the Chebyshev functions psi, theta, pi.

The core object is a LambdaTable holding Lambda(n) for 1 <= n <= n_max
together with compensated prefix sums, so that psi(x), theta(x), pi(x)
and the error series r(n) = psi(n) - n are O(1) lookups after an O(n)
construction.

Lambda(n) = log p when n = p^m for a prime p, else 0.  Classification
uses a smallest-prime-factor linear sieve: n is a prime power iff
repeatedly dividing by spf(n) reaches 1, and n is prime iff spf(n) = n.
"""

from __future__ import annotations

import math
import struct
import zlib
from dataclasses import dataclass

import numpy as np

from .accum import neumaier_prefix_sum

CACHE_MAGIC = b"PNTSIEVE1"


class CacheError(Exception):
    """Raised when a sieve cache file is malformed or fails validation."""


@dataclass(frozen=True)
class LambdaTable:
    """Sieved Lambda values and prefix sums up to n_max.

    Arrays are 1-indexed (index 0 unused) and frozen after construction:

        lam[n]         Lambda(n)
        psi_prefix[n]  psi(n) = sum_{m <= n} Lambda(m)
        theta_prefix[n] theta(n) = sum_{p <= n} log p
        pi_prefix[n]   number of primes <= n
        is_prime[n]    primality flag from the sieve (spf(n) == n)
    """

    n_max: int
    lam: np.ndarray
    psi_prefix: np.ndarray
    theta_prefix: np.ndarray
    pi_prefix: np.ndarray
    is_prime: np.ndarray


@dataclass(frozen=True)
class ErrorSeries:
    """r[n] = psi(n) - n for 1 <= n <= n_max (index 0 unused)."""

    n_max: int
    r: np.ndarray


def _smallest_prime_factor(n_max: int) -> tuple[np.ndarray, list[int]]:
    """Linear sieve: spf[n] = smallest prime factor of n, spf[0] = spf[1] = 0."""
    spf = np.zeros(n_max + 1, dtype=np.int64)
    primes: list[int] = []
    for n in range(2, n_max + 1):
        if spf[n] == 0:
            spf[n] = n
            primes.append(n)
        for p in primes:
            if p > spf[n] or n * p > n_max:
                break
            spf[n * p] = p
    return spf, primes


def build_lambda_table(n_max: int) -> LambdaTable:
    """Sieve Lambda(n) for n <= n_max and accumulate psi, theta, pi prefixes.

    Raises ValueError for n_max < 1.  Deterministic: equal n_max gives
    bitwise-equal tables.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")

    spf, _ = _smallest_prime_factor(n_max)
    lam = np.zeros(n_max + 1)
    is_prime = np.zeros(n_max + 1, dtype=bool)
    theta_terms = np.zeros(n_max + 1)
    for n in range(2, n_max + 1):
        p = int(spf[n])
        m = n
        while m % p == 0:
            m //= p
        if m == 1:  # n = p^k
            lam[n] = math.log(p)
            if p == n:
                is_prime[n] = True
                theta_terms[n] = lam[n]

    psi_prefix = np.zeros(n_max + 1)
    psi_prefix[1:] = neumaier_prefix_sum(lam[1:])
    theta_prefix = np.zeros(n_max + 1)
    theta_prefix[1:] = neumaier_prefix_sum(theta_terms[1:])
    pi_prefix = np.cumsum(is_prime).astype(np.int64)

    for arr in (lam, psi_prefix, theta_prefix, pi_prefix, is_prime):
        arr.flags.writeable = False
    return LambdaTable(n_max, lam, psi_prefix, theta_prefix, pi_prefix, is_prime)


def _check_range(table: LambdaTable, x: int) -> None:
    if not 1 <= x <= table.n_max:
        raise ValueError(f"x = {x} outside table range [1, {table.n_max}]")


def psi(table: LambdaTable, x: int) -> float:
    """Chebyshev psi(x) = sum_{n <= x} Lambda(n) = log lcm(1..x)."""
    _check_range(table, x)
    return float(table.psi_prefix[x])


def theta(table: LambdaTable, x: int) -> float:
    """Chebyshev theta(x) = sum over primes p <= x of log p."""
    _check_range(table, x)
    return float(table.theta_prefix[x])


def prime_pi(table: LambdaTable, x: int) -> int:
    """Number of primes <= x."""
    _check_range(table, x)
    return int(table.pi_prefix[x])


def error_series(table: LambdaTable, n_max: int | None = None) -> ErrorSeries:
    """Error series r[n] = psi(n) - n for n <= n_max (default: whole table)."""
    if n_max is None:
        n_max = table.n_max
    if not 1 <= n_max <= table.n_max:
        raise ValueError(f"n_max = {n_max} outside table range [1, {table.n_max}]")
    r = np.zeros(n_max + 1)
    r[1:] = table.psi_prefix[1 : n_max + 1] - np.arange(1, n_max + 1, dtype=float)
    r.flags.writeable = False
    return ErrorSeries(n_max, r)


# -- binary cache -----------------------------------------------------------
#
# Format: magic "PNTSIEVE1", little-endian u64 n_max, then n_max float64
# Lambda values for n = 1..n_max.  Integrity is re-derived on load: every
# nonzero entry must round-trip as log p for a prime power p^m <= n_max.


def write_cache(table: LambdaTable, path) -> None:
    with open(path, "wb") as f:
        f.write(CACHE_MAGIC)
        f.write(struct.pack("<Q", table.n_max))
        f.write(table.lam[1:].astype("<f8").tobytes())


def _validate_lambda(lam: np.ndarray, n_max: int) -> None:
    """Reject cache payloads whose entries are not consistent Lambda values."""
    if lam[1] != 0.0:
        raise CacheError("cache integrity check failed: Lambda(1) != 0")
    small_primes = [p for p in range(2, int(math.isqrt(n_max)) + 2) if all(p % q for q in range(2, int(math.isqrt(p)) + 1))]
    max_log = math.log(n_max) + 1e-9 if n_max > 1 else 1.0
    for n in np.nonzero(lam[1:])[0] + 1:
        v = lam[n]
        if not (0.0 < v <= max_log) or not math.isfinite(v):
            raise CacheError(f"cache integrity check failed at n = {n}")
        p = round(math.exp(v))
        if p < 2 or abs(v - math.log(p)) > 1e-9 * max(1.0, abs(v)):
            raise CacheError(f"cache integrity check failed at n = {n}")
        if any(p % q == 0 for q in small_primes if q < p) or n % p != 0:
            raise CacheError(f"cache integrity check failed at n = {n}")
        m = int(n)
        while m % p == 0:
            m //= p
        if m != 1:
            raise CacheError(f"cache integrity check failed at n = {n}")


def read_cache(path) -> LambdaTable:
    """Load a cache file, validate it, and rebuild the derived prefixes.

    Primality is recovered from Lambda alone: n is prime iff Lambda(n) > 0
    and round(exp(Lambda(n))) == n.
    """
    with open(path, "rb") as f:
        data = f.read()
    if len(data) < len(CACHE_MAGIC) + 8 or data[: len(CACHE_MAGIC)] != CACHE_MAGIC:
        raise CacheError("bad cache header")
    (n_max,) = struct.unpack_from("<Q", data, len(CACHE_MAGIC))
    payload = data[len(CACHE_MAGIC) + 8 :]
    if n_max < 1 or len(payload) != 8 * n_max:
        raise CacheError(f"cache length mismatch for n_max = {n_max}")
    lam = np.zeros(n_max + 1)
    lam[1:] = np.frombuffer(payload, dtype="<f8")
    _validate_lambda(lam, n_max)

    is_prime = np.zeros(n_max + 1, dtype=bool)
    theta_terms = np.zeros(n_max + 1)
    for n in np.nonzero(lam[1:])[0] + 1:
        p = round(math.exp(lam[n]))
        if p == n:
            is_prime[n] = True
            theta_terms[n] = lam[n]
    psi_prefix = np.zeros(n_max + 1)
    psi_prefix[1:] = neumaier_prefix_sum(lam[1:])
    theta_prefix = np.zeros(n_max + 1)
    theta_prefix[1:] = neumaier_prefix_sum(theta_terms[1:])
    pi_prefix = np.cumsum(is_prime).astype(np.int64)
    for arr in (lam, psi_prefix, theta_prefix, pi_prefix, is_prime):
        arr.flags.writeable = False
    return LambdaTable(int(n_max), lam, psi_prefix, theta_prefix, pi_prefix, is_prime)


def cache_checksum(path) -> int:
    """CRC32 of the cache file, for logging/diagnostics."""
    with open(path, "rb") as f:
        return zlib.crc32(f.read())
