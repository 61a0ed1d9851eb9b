"""Complete and incomplete exponential sums twisted by modular inverses.

Everything here is built from the additive character e_p(x) =
exp(2*pi*i*x/p).  Phase arguments are reduced in exact integer
arithmetic before a float is ever produced; only the final division by
p and the trig call are inexact, so the working accuracy is a few ulp
per term regardless of the modulus size.

Two independent evaluation routes coexist on purpose:

* ``incomplete_kloosterman`` sums its definition term by term (one
  batch inversion per call) and serves as the reference path;
* ``all_windows`` produces every window sum of a fixed length in O(p)
  total work via a phase table and sliding updates, reseeding the
  window from scratch every 2**16 steps so rounding drift cannot
  accumulate across a long scan.

Tests drive one against the other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .intervals import IntInterval, require_inside
from .modarith import PrimeModulus, batch_inv

__all__ = [
    "ComplexSum",
    "SumSpec",
    "WindowSpec",
    "NonRealAccumulation",
    "e_p",
    "kloosterman_complete",
    "kloosterman_table",
    "incomplete_kloosterman",
    "interval_sum",
    "all_windows",
]

# Complex accumulations are plain complex numbers (numpy complex128 in
# array form); no wrapper type is needed.
ComplexSum = complex

# Recompute the sliding window from scratch this often.
_RESEED_EVERY = 1 << 16

# Largest modulus for which ell * inverse stays below 2**63, i.e. safe
# for numpy int64 products; beyond it the code falls back to exact
# Python-int phase reduction.
_INT64_SAFE_P = 3_037_000_499

# Complete-sum tables cost O(p^2); refuse sizes that would silently
# take hours.
_TABLE_MAX_P = 100_000

# A nominally real accumulation may carry at most this much imaginary
# part (scaled by p) before it is treated as numerical corruption.
_IMAG_TOL = 1e-6


class NonRealAccumulation(ArithmeticError):
    """A sum that must be real came back with a non-negligible imaginary part."""


@dataclass(frozen=True)
class SumSpec:
    """Twist ell and modulus p for sums of e_p(ell * inverse(m))."""

    ell: int
    p: PrimeModulus

    def __post_init__(self):
        if not isinstance(self.ell, int) or isinstance(self.ell, bool):
            raise TypeError("ell must be an int")
        if not (1 <= self.ell <= self.p.p - 1):
            raise ValueError(
                f"ell must lie in [1, p-1]: got ell={self.ell} at p={self.p.p}"
            )


@dataclass(frozen=True)
class WindowSpec:
    """Window start n and length H: the sum runs over m = n+1 .. n+H."""

    n: int
    H: int

    def __post_init__(self):
        if self.H < 1:
            raise ValueError(f"window length must be >= 1, got {self.H}")
        if self.n < 0:
            raise ValueError(f"window start must be >= 0, got {self.n}")


def e_p(x: int, p: PrimeModulus | int) -> complex:
    """Additive character exp(2*pi*i*x/p); x is reduced mod p exactly."""
    m = p.p if isinstance(p, PrimeModulus) else int(p)
    return cmath.exp(2j * math.pi * ((x % m) / m))


@lru_cache(maxsize=4)
def _roots_of_unity(p: int) -> np.ndarray:
    """E[r] = e_p(r) for r = 0..p-1, as a read-only lookup table."""
    table = np.exp((2j * np.pi / p) * np.arange(p))
    table.flags.writeable = False
    return table


@lru_cache(maxsize=4)
def _inverse_table(p: int) -> np.ndarray:
    """inv[m] = m^{-1} mod p for m = 1..p-1; inv[0] = 0 as a dead slot."""
    table = np.zeros(p, dtype=np.int64)
    table[1:] = batch_inv(range(1, p), p)
    table.flags.writeable = False
    return table


@lru_cache(maxsize=4)
def _phase_table(spec: SumSpec) -> np.ndarray:
    """c[m] = e_p(ell * inverse(m)) for m = 1..p-1, with c[0] = 0.

    The zero slot encodes the skip rule for multiples of p: a wrapped
    window picks up exactly 0 from residue 0.
    """
    p = spec.p.p
    inv = _inverse_table(p)
    if p <= _INT64_SAFE_P:
        phases = (spec.ell * inv) % p  # products < p**2 < 2**63
        table = _roots_of_unity(p)[phases].copy()
    else:
        angles = np.array(
            [(spec.ell * int(v)) % p for v in inv], dtype=np.float64
        )
        table = np.exp((2j * np.pi / p) * angles)
    table[0] = 0.0
    table.flags.writeable = False
    return table


def kloosterman_complete(a: int, b: int, p: PrimeModulus) -> float:
    """Complete sum over x = 1..p-1 of e_p(a*x + b*inverse(x)).

    Always real: the substitution x -> -x conjugates every term, so the
    imaginary parts cancel in exact arithmetic.  The accumulated
    imaginary part is checked against 1e-6 * p and a violation raises
    NonRealAccumulation instead of returning a corrupted value.

    Direct O(p) summation with exact integer phase reduction.
    """
    m = p.p
    a %= m
    b %= m
    inv = _inverse_table(m)
    if m <= _INT64_SAFE_P:
        x = np.arange(1, m, dtype=np.int64)
        ph = (a * x % m + b * inv[1:] % m) % m
        s = _roots_of_unity(m)[ph].sum()
    else:
        angles = np.array(
            [(a * x + b * int(inv[x])) % m for x in range(1, m)], dtype=np.float64
        )
        s = np.exp((2j * np.pi / m) * angles).sum()
    if abs(s.imag) >= _IMAG_TOL * m:
        raise NonRealAccumulation(f"|Im| = {abs(s.imag):.3e} at p = {m}")
    return float(s.real)


@lru_cache(maxsize=4)
def kloosterman_table(spec: SumSpec) -> np.ndarray:
    """K[a] = complete sum with twists (ell, a), for every a = 0..p-1.

    Each entry is the same direct O(p) summation as
    ``kloosterman_complete``, vectorized over chunks of a; the full
    table costs O(p^2) and is cached so sweeps over window lengths pay
    for it once.  Capped at p <= 100000.
    """
    p = spec.p.p
    if p > _TABLE_MAX_P:
        raise ValueError(f"complete-sum table is O(p^2); capped at p <= {_TABLE_MAX_P}")
    roots = _roots_of_unity(p)
    invs = _inverse_table(p)[1:]  # inverse(x) for x = 1..p-1
    u = (spec.ell * np.arange(1, p, dtype=np.int64)) % p  # ell * x
    out = np.empty(p, dtype=np.float64)
    worst_imag = 0.0
    chunk = max(1, 4_000_000 // p)
    for lo in range(0, p, chunk):
        a = np.arange(lo, min(lo + chunk, p), dtype=np.int64)
        ph = (u[None, :] + (a[:, None] * invs[None, :]) % p) % p
        vals = roots[ph].sum(axis=1)
        worst_imag = max(worst_imag, float(np.abs(vals.imag).max()))
        out[lo : lo + len(a)] = vals.real
    if worst_imag >= _IMAG_TOL * p:
        raise NonRealAccumulation(f"|Im| = {worst_imag:.3e} at p = {p}")
    out.flags.writeable = False
    return out


def incomplete_kloosterman(spec: SumSpec, w: WindowSpec) -> complex:
    """Window sum over m = n+1 .. n+H of e_p(ell * inverse(m)).

    Multiples of p inside the window have no inverse and contribute
    nothing; they are skipped exactly.  The window may wrap past p (only
    n mod p matters).  This is the definitional, term-by-term route: one
    batch inversion for the window, then exact integer phases.
    """
    p = spec.p.p
    residues = [(w.n + j) % p for j in range(1, w.H + 1)]
    units = [r for r in residues if r]
    if not units:
        return 0j
    invs = batch_inv(units, p)
    angles = np.array([(spec.ell * v) % p for v in invs], dtype=np.float64)
    return complex(np.exp((2j * np.pi / p) * angles).sum())


def interval_sum(spec: SumSpec, interval: IntInterval) -> complex:
    """Window sum over an interval that must sit inside (0, p).

    Raises IntervalOutOfRange when the interval pokes outside (0, p);
    otherwise identical to the window starting at lo-1 with length
    |interval|.
    """
    require_inside(interval, spec.p.p)
    return incomplete_kloosterman(spec, WindowSpec(interval.lo - 1, interval.size))


def all_windows(spec: SumSpec, H: int) -> np.ndarray:
    """Window sums of length H for every start mod p, in O(p) total work.

    Entry n-1 holds the sum for start n mod p, n = 1..p (so the last
    entry is the start-0 window).  Built from one batch-inverse phase
    table plus a sliding update per step; the window is recomputed from
    scratch every 2**16 steps, which pins accumulated float drift to the
    reseed block length instead of p.
    """
    p = spec.p.p
    if not (1 <= H <= p):
        raise ValueError(f"need 1 <= H <= p, got H={H} at p={p}")
    c = _phase_table(spec)
    # V[n] = window sum at start n, n = 0..p-1.
    V = np.empty(p, dtype=np.complex128)
    for start in range(0, p, _RESEED_EVERY):
        stop = min(start + _RESEED_EVERY, p)
        seed = c[(start + 1 + np.arange(H)) % p].sum()  # from-scratch reseed
        V[start] = seed
        if stop > start + 1:
            j = np.arange(start + 1, stop, dtype=np.int64)
            steps = c[(j + H) % p] - c[j]
            V[start + 1 : stop] = seed + np.cumsum(steps)
    # Shift so the start-1 window is first and the start-0 window last.
    return np.roll(V, -1)
