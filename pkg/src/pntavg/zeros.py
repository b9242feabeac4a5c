"""Riemann-zero ingestion and truncated explicit-formula sums.

Zero ordinates gamma (with rho = 1/2 + i*gamma taken on the critical
line) are read from plain text, one positive decimal per line, '#'
comments allowed.  The sums evaluated here are the conjugate-paired
truncations

    zero_sum(x, T, k) = sum_{gamma <= T} 2 Re[ x^rho / prod_{j=0}^{k} (rho + j) ]

which bound the averaged psi error when paired with the appropriate
kernel order k.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from .accum import neumaier_sum
from .averaging import IteratedAverage


class ZeroFormatError(ValueError):
    """Malformed or mis-ordered zero table."""


@dataclass(frozen=True)
class ZeroSet:
    """Strictly increasing positive ordinates, immutable after load."""

    gammas: np.ndarray
    source: str = "unknown"

    def __len__(self) -> int:
        return len(self.gammas)


@dataclass(frozen=True)
class ZeroSumResult:
    x: float
    T: float
    k: int
    value: float
    count_used: int


def _parse_lines(lines: Iterable[str]) -> list[float]:
    out: list[float] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            g = float(line)
        except ValueError as exc:
            raise ZeroFormatError(f"line {lineno}: not a number: {line!r}") from exc
        if not math.isfinite(g) or g <= 0:
            raise ZeroFormatError(f"line {lineno}: ordinate must be finite and > 0")
        if out and g <= out[-1]:
            raise ZeroFormatError(
                f"line {lineno}: ordinates must be strictly increasing "
                f"({g} after {out[-1]})"
            )
        out.append(g)
    return out


def load_zeros(source: str | IO, name: str | None = None) -> ZeroSet:
    """Parse a zeros table from a path or an open text stream.

    Strict: any malformed line raises ZeroFormatError.  An empty stream
    yields an empty ZeroSet (all sums are then 0).
    """
    if hasattr(source, "read"):
        gammas = _parse_lines(source)
        label = name or getattr(source, "name", "stream")
    else:
        with open(source, "r", encoding="ascii") as f:
            gammas = _parse_lines(f)
        label = name or str(source)
    arr = np.asarray(gammas, dtype=float)
    arr.flags.writeable = False
    return ZeroSet(arr, label)


def _select(zeros: ZeroSet, T: float) -> np.ndarray:
    if len(zeros) == 0:
        return zeros.gammas
    if T > zeros.gammas[-1]:
        raise ValueError(
            f"T = {T} exceeds last available ordinate {zeros.gammas[-1]:.6f}; "
            "insufficient zero data"
        )
    return zeros.gammas[zeros.gammas <= T]


def zero_sum(zeros: ZeroSet, x: float, T: float, k: int = 1) -> ZeroSumResult:
    """Conjugate-paired truncated zero sum with kernel order k.

    Terms are accumulated in ascending gamma with compensation; the
    decay 1/gamma^(k+1) makes the order fixed and reproducible.
    """
    if x <= 1:
        raise ValueError(f"x must be > 1, got {x}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    gs = _select(zeros, T)
    amp = math.sqrt(x)
    lx = math.log(x)

    def terms():
        for g in gs:
            rho = complex(0.5, g)
            den = rho
            for j in range(1, k + 1):
                den *= rho + j
            yield 2.0 * (amp * cmath.exp(1j * g * lx) / den).real

    return ZeroSumResult(x=x, T=T, k=k, value=neumaier_sum(terms()), count_used=len(gs))


def lambda_factor(zeros: ZeroSet, x: float, T: float, i: int) -> float:
    """Normalized factor lambda_i = zero_sum(x, T, i).value / sqrt(x)."""
    if i not in (1, 2, 3):
        raise ValueError(f"i must be 1, 2 or 3, got {i}")
    if len(zeros) == 0:
        return 0.0
    return zero_sum(zeros, x, T, i).value / math.sqrt(x)


def explicit_formula_residual(
    avg: IteratedAverage, zeros: ZeroSet, x: int, T: float
) -> float:
    """rbar(x) + zero_sum(x, T, 1).value, the truncation residual.

    Requires a first-order average (avg.order == 1) and x >= 2.  With T
    below the first ordinate the sum is empty and the residual is just
    rbar(x).
    """
    if avg.order != 1:
        raise ValueError("explicit_formula_residual needs a k = 1 average")
    if x < 2:
        raise ValueError(f"x must be >= 2, got {x}")
    if x > avg.n_max:
        raise ValueError(f"x = {x} outside average range [2, {avg.n_max}]")
    rbar = float(avg.values[x])
    if len(zeros) == 0 or T < zeros.gammas[0]:
        return rbar
    return rbar + zero_sum(zeros, float(x), T, 1).value


def gamma_square_tail(zeros: ZeroSet, T: float) -> float:
    """2 * sum over gamma <= T of 1/gamma^2 (conjugate-paired).

    Nondecreasing in T and bounded as T grows; T beyond the data is
    allowed here since missing tail terms only tighten the partial sum.
    """
    if T < 0:
        raise ValueError(f"T must be >= 0, got {T}")
    gs = zeros.gammas[zeros.gammas <= T]
    return 2.0 * neumaier_sum(1.0 / (gs * gs))
