"""Mean-square statistics of inverse-twisted window sums.

Two routes to the same quantity live here.  ``window_mean_square`` sums
|S(n,H)|^2 over every window start directly; ``spectral_mean_square``
evaluates the same number from the complete-sum side, pairing squared
complete-sum values with the squared modulus of a geometric sum.  Their
agreement is an exact identity (orthogonality of additive characters),
which makes each implementation a high-precision oracle for the other.

The module also carries the dyadic block machinery that splits an
arbitrary window length k <= 2H into at most log-many power-of-two
blocks, and an exploratory scanner for the square-root-cancellation
ratio max|S|/sqrt(H).

All logarithms are natural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .expsums import (
    SumSpec,
    WindowSpec,
    _roots_of_unity,
    all_windows,
    incomplete_kloosterman,
    interval_sum,
    kloosterman_table,
)
from .intervals import DisjointFamily
from .modarith import PrimeModulus

__all__ = [
    "DegenerateBound",
    "InvalidK",
    "MeanValueReport",
    "DyadicPlan",
    "HooleyScanStats",
    "window_mean_square",
    "window_mean_square_bound",
    "spectral_mean_square",
    "spectral_mean_square_slow",
    "family_mean_square",
    "family_mean_square_bound",
    "trivial_family_bound",
    "check_window_mean_square",
    "check_family_mean_square",
    "dyadic_plan",
    "reconstruct_window_sum",
    "hooley_scan",
]


class DegenerateBound(ValueError):
    """The requested bound is vacuous at this window length."""


class InvalidK(ValueError):
    """Window length k outside [1, 2H] has no dyadic plan at scale H."""


@dataclass(frozen=True)
class MeanValueReport:
    """One statistic-vs-bound comparison; ratio > 1 is a falsification."""

    lhs: float
    bound: float

    @property
    def ratio(self) -> float:
        return self.lhs / self.bound if self.bound > 0 else math.inf

    @property
    def passed(self) -> bool:
        return self.lhs <= self.bound


def window_mean_square(spec: SumSpec, H: int) -> float:
    """Sum of |S(n,H)|^2 over all p window starts, via the O(p) scan."""
    W = all_windows(spec, H)
    return float((W.real * W.real + W.imag * W.imag).sum())


def window_mean_square_bound(H: int, p: PrimeModulus) -> float:
    """H^2/p + 8pH: upper bound for the all-start window mean square,
    valid for every window length 1 <= H <= p."""
    if H < 1:
        raise ValueError(f"window length must be >= 1, got {H}")
    m = p.p
    return H * H / m + 8.0 * m * H


def spectral_mean_square(spec: SumSpec, H: int) -> float:
    """Complete-sum route to the window mean square.

    (1/p) * sum over a = 1..p of K[a]^2 * |g_H(a)|^2, where K[a] is the
    complete sum with twists (ell, a) and g_H(a) = sum_{h=1..H} e_p(ah).
    |g_H(a)|^2 has the closed form sin^2(pi*a*H/p) / sin^2(pi*a/p) away
    from a = p, and equals H^2 there.  Equals window_mean_square(spec, H)
    exactly (up to rounding) -- that agreement is the identity this
    module exists to check.
    """
    p = spec.p.p
    if not (1 <= H <= p):
        raise ValueError(f"need 1 <= H <= p, got H={H} at p={p}")
    K = kloosterman_table(spec)
    a = np.arange(1, p, dtype=np.int64)
    # Reduce a*H mod p in integers first: sin^2(pi*x) is 1-periodic, and
    # small exact arguments keep the kernel at full precision.
    num = np.sin((np.pi / p) * ((a * H) % p)) ** 2
    den = np.sin((np.pi / p) * a) ** 2
    tail = float((K[1:] ** 2 * (num / den)).sum())
    return (tail + K[0] ** 2 * H * H) / p


def spectral_mean_square_slow(spec: SumSpec, H: int) -> float:
    """Literal double-sum form of the geometric weight: for each a the
    kernel is accumulated as sum_{h1,h2} e_p(a*(h1-h2)) with no closed
    form.  O(p*H^2) -- cross-check use at small sizes only."""
    p = spec.p.p
    if p * H * H > 200_000_000:
        raise ValueError("slow spectral path refused: p*H^2 too large")
    K = kloosterman_table(spec)
    roots = _roots_of_unity(p)
    h = np.arange(1, H + 1, dtype=np.int64)
    diff = (h[:, None] - h[None, :]) % p
    total = 0.0
    for a in range(p):
        kernel = roots[(a * diff) % p].sum()
        total += K[a] ** 2 * kernel.real
    return total / p


def family_mean_square(spec: SumSpec, family: DisjointFamily) -> float:
    """Sum of |interval sum|^2 over the family's intervals."""
    return float(sum(abs(interval_sum(spec, iv)) ** 2 for iv in family.intervals))


def family_mean_square_bound(H: int, p: PrimeModulus) -> float:
    """4096 * p * (ln H)^2: bound for the disjoint-family mean square.

    Vacuous at H < 2 (the log factor vanishes), which raises
    DegenerateBound; callers in that regime should compare against
    ``trivial_family_bound`` instead.  Natural log.
    """
    if H < 2:
        raise DegenerateBound(f"bound degenerates for H < 2 (got H={H})")
    return 4096.0 * p.p * math.log(H) ** 2


def trivial_family_bound(family: DisjointFamily) -> float:
    """Sum of |I_j|^2: the crude per-interval bound, always valid."""
    return float(sum(iv.size**2 for iv in family.intervals))


def check_window_mean_square(spec: SumSpec, H: int) -> MeanValueReport:
    """Window mean square against its H^2/p + 8pH bound."""
    return MeanValueReport(
        lhs=window_mean_square(spec, H),
        bound=window_mean_square_bound(H, spec.p),
    )


def check_family_mean_square(spec: SumSpec, family: DisjointFamily) -> MeanValueReport:
    """Family mean square against the 4096 * p * ln^2(H) bound."""
    return MeanValueReport(
        lhs=family_mean_square(spec, family),
        bound=family_mean_square_bound(family.H, spec.p),
    )


@dataclass(frozen=True)
class DyadicPlan:
    """Decomposition of a window length k <= 2H into power-of-two blocks.

    t is the least positive exponent with 2H <= 2**t.  Each selected
    depth d contributes one block of length 2**(t-d); laid end to end in
    increasing depth the blocks tile {1..k} with no gaps or overlaps.
    Offsets are multiples of the block's own length (offset = v * length
    with v < 2**d), which is what lets each depth reuse one fixed-length
    window table.
    """

    t: int
    depths: tuple[int, ...]
    blocks: tuple[tuple[int, int], ...]  # (offset, length) per depth

    def __post_init__(self):
        if self.t < 1:
            raise ValueError(f"t must be a positive exponent, got {self.t}")
        if len(self.depths) != len(self.blocks) or not self.depths:
            raise ValueError("depths and blocks must align and be non-empty")
        if list(self.depths) != sorted(set(self.depths)):
            raise ValueError(f"depths must be strictly increasing: {self.depths}")
        expected_offset = 0
        for d, (offset, length) in zip(self.depths, self.blocks):
            if not (0 <= d <= self.t):
                raise ValueError(f"depth {d} outside [0, {self.t}]")
            if length != 1 << (self.t - d):
                raise ValueError(f"block at depth {d} must have length 2**(t-d)")
            if offset != expected_offset:
                raise ValueError(f"blocks must tile contiguously from offset 0")
            if offset % length != 0 or offset // length >= 1 << d:
                raise ValueError(f"offset {offset} is not v * length with v < 2**d")
            expected_offset += length

    @property
    def k(self) -> int:
        return sum(length for _, length in self.blocks)


def dyadic_plan(k: int, H: int) -> DyadicPlan:
    """Binary-split plan for a window of length k at scale H.

    Raises InvalidK unless 1 <= k <= 2H.  The plan writes k in binary
    relative to the scale exponent t = ceil(log2(2H)); bit i of k maps
    to depth d = t - i.
    """
    if H < 1:
        raise ValueError(f"H must be >= 1, got {H}")
    if not (1 <= k <= 2 * H):
        raise InvalidK(f"need 1 <= k <= 2H = {2 * H}, got k = {k}")
    t = (2 * H - 1).bit_length()  # least t with 2H <= 2**t; H >= 1 makes t >= 1
    depths = tuple(sorted(t - i for i in range(t + 1) if (k >> i) & 1))
    blocks = []
    offset = 0
    for d in depths:
        length = 1 << (t - d)
        blocks.append((offset, length))
        offset += length
    return DyadicPlan(t=t, depths=depths, blocks=tuple(blocks))


def reconstruct_window_sum(spec: SumSpec, n: int, plan: DyadicPlan) -> complex:
    """Window sum at start n rebuilt block by block from the plan.

    Same terms as the direct window of length plan.k at start n, only
    regrouped, so it matches the direct evaluation to rounding error.
    """
    total = 0j
    for offset, length in plan.blocks:
        total += incomplete_kloosterman(spec, WindowSpec(n + offset, length))
    return total


@dataclass(frozen=True)
class HooleyScanStats:
    """Exploratory scan statistics for a fixed window length.

    No bound is asserted: max_ratio tracks the square-root-cancellation
    heuristic |S| ~ sqrt(H) and is recorded as data.
    """

    p: int
    ell: int
    H: int
    max_abs: float  # max over all starts of |S(n, H)|
    max_ratio: float  # max_abs / sqrt(H)
    mean_sq_over_H: float  # average of |S(n, H)|^2, divided by H
    argmax_n: int  # smallest window start attaining max_abs


def hooley_scan(spec: SumSpec, H: int) -> HooleyScanStats:
    """Scan every window start and summarize the cancellation observed."""
    W = all_windows(spec, H)
    V = np.roll(W, 1)  # V[n] = sum at start n, n = 0..p-1
    sq = V.real * V.real + V.imag * V.imag
    i = int(np.argmax(sq))  # first index = smallest start
    max_abs = math.sqrt(float(sq[i]))
    return HooleyScanStats(
        p=spec.p.p,
        ell=spec.ell,
        H=H,
        max_abs=max_abs,
        max_ratio=max_abs / math.sqrt(H),
        mean_sq_over_H=float(sq.mean()) / H,
        argmax_n=i,
    )
