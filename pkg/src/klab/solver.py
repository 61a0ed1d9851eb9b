"""Counting and locating solutions of x*y = 1 (mod p) over interval pairs.

The exact count over a pair (I1, I2) splits into a main term
|I1|*|I2|/p plus a Fourier remainder over the nonzero frequencies; the
split is an exact orthogonality identity, so count = main + Re(error)
to rounding error and Im(error) vanishes.  Family-level helpers locate
the first soluble pair and compute how many pairs suffice for
guaranteed solubility in the mean-square regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .intervals import IntervalPairFamily, IntInterval, require_inside
from .modarith import PrimeModulus, batch_inv

__all__ = [
    "InfeasibleGeometry",
    "SolubilityReport",
    "count_solutions",
    "main_term",
    "error_term",
    "family_first_soluble",
    "pair_report",
    "solubility_threshold",
    "two_thirds_parameters",
    "two_thirds_preset",
]

# Same numpy-int64 product guard as the sums module.
_INT64_SAFE_P = 3_037_000_499


class InfeasibleGeometry(ValueError):
    """Requested interval family cannot fit inside (0, p)."""


def count_solutions(
    I1: IntInterval, I2: IntInterval, p: PrimeModulus
) -> tuple[int, Optional[tuple[int, int]]]:
    """Exact count of pairs (x, y) in I1 x I2 with x*y = 1 mod p.

    Scans the smaller interval with one batch inversion and tests
    membership of the inverse in the other.  The witness is the solution
    with the smallest x (None when insoluble).
    """
    m = p.p
    require_inside(I1, m)
    require_inside(I2, m)
    count = 0
    witness: Optional[tuple[int, int]] = None
    if I2.size < I1.size:
        ys = range(I2.lo, I2.hi + 1)
        xs = batch_inv(ys, m)
        for y, x in zip(ys, xs):
            if x in I1:
                count += 1
                if witness is None or x < witness[0]:
                    witness = (x, y)
    else:
        xs = range(I1.lo, I1.hi + 1)
        ys = batch_inv(xs, m)
        for x, y in zip(xs, ys):
            if y in I2:
                count += 1
                if witness is None:
                    witness = (x, y)  # ascending x: first hit is minimal
    return count, witness


def main_term(I1: IntInterval, I2: IntInterval, p: PrimeModulus) -> float:
    """Expected count |I1| * |I2| / p."""
    return I1.size * I2.size / p.p


def error_term(I1: IntInterval, I2: IntInterval, p: PrimeModulus) -> complex:
    """Fourier remainder of the solution count.

    (1/p) * sum over ell = 1..p-1 of Y(ell) * X(ell), where
    Y(ell) = sum_{y in I2} e_p(-ell*y)   (closed geometric form) and
    X(ell) = sum_{x in I1} e_p(ell * inverse(x)).

    Exact complement of the main term: count = main + Re(error), with
    Im(error) at rounding level.  X is evaluated for all ell by direct
    per-ell summation over one batch-inverted table of I1, chunked to
    bound memory.
    """
    m = p.p
    require_inside(I1, m)
    require_inside(I2, m)
    if m > _INT64_SAFE_P:
        raise ValueError(f"error_term supports p <= {_INT64_SAFE_P} (int64 products)")
    xb = np.array(batch_inv(range(I1.lo, I1.hi + 1), m), dtype=np.int64)
    K = I2.size
    total = 0j
    chunk = max(1, 2_000_000 // len(xb))
    for lo in range(1, m, chunk):
        ell = np.arange(lo, min(lo + chunk, m), dtype=np.int64)
        ph = (ell[:, None] * xb[None, :]) % m
        x_factor = np.exp(2j * np.pi / m * ph).sum(axis=1)
        # Geometric sum over I2: first term e_p(-ell*lo2), ratio e_p(-ell).
        a_first = (ell * I2.lo) % m
        a_len = (ell * K) % m
        num = 1.0 - np.exp(-2j * np.pi / m * a_len)
        den = 1.0 - np.exp(-2j * np.pi / m * ell)
        y_factor = np.exp(-2j * np.pi / m * a_first) * num / den
        total += (y_factor * x_factor).sum()
    return complex(total / m)


def family_first_soluble(
    family: IntervalPairFamily, p: PrimeModulus
) -> Optional[tuple[int, tuple[int, int]]]:
    """Smallest 1-based j whose pair admits a solution, with its witness.

    Returns None when every pair in the family is insoluble.
    """
    for j, (i1, i2) in enumerate(family.pairs, start=1):
        count, witness = count_solutions(i1, i2, p)
        if count:
            assert witness is not None
            return j, witness
    return None


@dataclass(frozen=True)
class SolubilityReport:
    """Count decomposition of one interval pair inside a family."""

    j: int
    count: int
    main: float
    error_re: float
    error_im: float
    witness: Optional[tuple[int, int]]


def pair_report(
    j: int, I1: IntInterval, I2: IntInterval, p: PrimeModulus
) -> SolubilityReport:
    """Full count/main/error record for the pair at index j."""
    count, witness = count_solutions(I1, I2, p)
    err = error_term(I1, I2, p)
    return SolubilityReport(
        j=j,
        count=count,
        main=main_term(I1, I2, p),
        error_re=err.real,
        error_im=err.imag,
        witness=witness,
    )


def solubility_threshold(H: int, K: int, p: PrimeModulus, c: float = 1.0) -> int:
    """ceil(c * p^3 * (ln p)^4 / (H^2 * K^2)).

    Family sizes at or above this make a soluble pair certain in the
    mean-square regime (sufficient, far from necessary).  Natural log.
    """
    if H < 1 or K < 1:
        raise ValueError("H and K must be >= 1")
    if c <= 0:
        raise ValueError(f"scale constant c must be positive, got {c}")
    m = p.p
    return math.ceil(c * m**3 * p.log_p**4 / (H * H * K * K))


def two_thirds_parameters(p: PrimeModulus) -> tuple[int, int, int]:
    """Raw balanced-regime parameters, with no feasibility check:

    H = ceil(p^(2/3)) + 1, K = ceil(p^(2/3) * ln^2 p) + 1,
    J = ceil(p^(1/3)).

    In this regime the sufficient family size scales like p^(1/3).
    """
    m = p.p
    h = math.ceil(m ** (2.0 / 3.0)) + 1
    k = math.ceil(m ** (2.0 / 3.0) * p.log_p**2) + 1
    j = math.ceil(m ** (1.0 / 3.0))
    return h, k, j


def two_thirds_preset(p: PrimeModulus) -> tuple[int, int, int]:
    """Balanced-regime parameters validated to fit inside (0, p).

    With these exact formulas J*H > p - 1 always holds (J*H >= p by
    construction: the ceilings push both factors past p^(1/3) and
    p^(2/3)), and K outgrows p - 1 for every p below ~2.6e7, so the
    preset raises InfeasibleGeometry at any desk-scale modulus.  It
    exists to state the regime canonically and to fail loudly rather
    than generate an impossible family; scale J or the lengths down for
    a runnable configuration (``two_thirds_parameters`` returns the raw
    values).
    """
    h, k, j = two_thirds_parameters(p)
    m = p.p
    if k > m - 1:
        raise InfeasibleGeometry(f"K = {k} cannot fit inside (0, {m})")
    if j * h > m - 1:
        raise InfeasibleGeometry(
            f"J*H = {j * h} exceeds p-1 = {m - 1}: disjoint intervals cannot fit"
        )
    return h, k, j
