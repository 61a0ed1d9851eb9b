"""Integer intervals inside (0, p) and the families built from them."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "IntInterval",
    "IntervalOutOfRange",
    "DisjointFamily",
    "IntervalPairFamily",
    "require_inside",
]


class IntervalOutOfRange(ValueError):
    """Interval does not sit inside (0, p) for the modulus in use."""


@dataclass(frozen=True, order=True)
class IntInterval:
    """The integer range {lo, lo+1, ..., hi} with 1 <= lo <= hi."""

    lo: int
    hi: int

    def __post_init__(self):
        if not (isinstance(self.lo, int) and isinstance(self.hi, int)):
            raise TypeError("interval endpoints must be ints")
        if not (1 <= self.lo <= self.hi):
            raise ValueError(f"need 1 <= lo <= hi, got [{self.lo}, {self.hi}]")

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, x: int) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "IntInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


def require_inside(interval: IntInterval, p: int) -> None:
    """Check {lo..hi} inside (0, p); raise IntervalOutOfRange otherwise."""
    if interval.hi >= p:
        raise IntervalOutOfRange(
            f"interval [{interval.lo}, {interval.hi}] does not fit inside (0, {p})"
        )


@dataclass(frozen=True)
class DisjointFamily:
    """Pairwise-disjoint intervals whose sizes lie in (H/2, H]."""

    intervals: tuple[IntInterval, ...]
    H: int

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple(self.intervals))
        if self.H < 1:
            raise ValueError(f"H must be >= 1, got {self.H}")
        for iv in self.intervals:
            if not (self.H < 2 * iv.size and iv.size <= self.H):
                raise ValueError(
                    f"interval [{iv.lo}, {iv.hi}] has size {iv.size}, "
                    f"outside ({self.H}/2, {self.H}]"
                )
        by_lo = sorted(self.intervals)
        for a, b in zip(by_lo, by_lo[1:]):
            if a.hi >= b.lo:
                raise ValueError(f"intervals overlap: {a} and {b}")

    @property
    def J(self) -> int:
        return len(self.intervals)


@dataclass(frozen=True)
class IntervalPairFamily:
    """J interval pairs (I1_j, I2_j): every |I1_j| = H, every |I2_j| = K.

    The I1 side must be pairwise disjoint; the I2 side may overlap or
    coincide freely.
    """

    pairs: tuple[tuple[IntInterval, IntInterval], ...]
    H: int
    K: int

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((a, b) for a, b in self.pairs))
        firsts = []
        for i1, i2 in self.pairs:
            if i1.size != self.H:
                raise ValueError(f"|I1| must equal H={self.H}: got [{i1.lo}, {i1.hi}]")
            if i2.size != self.K:
                raise ValueError(f"|I2| must equal K={self.K}: got [{i2.lo}, {i2.hi}]")
            firsts.append(i1)
        firsts.sort()
        for a, b in zip(firsts, firsts[1:]):
            if a.hi >= b.lo:
                raise ValueError(f"I1 intervals overlap: {a} and {b}")

    @property
    def J(self) -> int:
        return len(self.pairs)
