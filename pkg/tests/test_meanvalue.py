"""Mean-square identities, bounds, dyadic plans, extremal scans.

The exact spectral identity is the workhorse oracle here: the
mean square of all window sums equals a weighted second moment of the
complete-sum table, with Fejer-style weights.  Three endpoint values
are known in closed form and serve as additional anchors:

    H = 1   -> p - 1
    H = p   -> p
    H = p-1 -> 2p - 3

(H = p - 1: each window omits one nonzero residue m0, so its sum is
-1 - e(ell*inv(m0)/p); expanding |.|^2 over the p windows gives
p * 1 + (p-1) * 1 + 2 * Re(sum of omitted phases) = 2p - 1 + 2 * 1,
minus the doubled real part of the full nonzero phase sum, = 2p - 3.)
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klab.expsums import SumSpec, WindowSpec, incomplete_kloosterman
from klab.intervals import DisjointFamily, IntInterval
from klab.meanvalue import (
    DegenerateBound,
    DyadicPlan,
    InvalidK,
    check_family_mean_square,
    check_window_mean_square,
    dyadic_plan,
    family_mean_square,
    family_mean_square_bound,
    hooley_scan,
    reconstruct_window_sum,
    spectral_mean_square,
    spectral_mean_square_slow,
    trivial_family_bound,
    window_mean_square,
    window_mean_square_bound,
)
from klab.modarith import PrimeModulus, inv_mod

P7 = PrimeModulus(7)
P13 = PrimeModulus(13)
P101 = PrimeModulus(101)
P997 = PrimeModulus(997)


def mean_square_oracle(ell, H, p):
    """Brute-force double loop, no shared code with the library path."""
    import cmath

    total = 0.0
    for n in range(1, p + 1):
        s = 0j
        for m in range(n + 1, n + H + 1):
            if m % p == 0:
                continue
            s += cmath.exp(2j * math.pi * ((ell * inv_mod(m, p)) % p) / p)
        total += abs(s) ** 2
    return total


class TestWindowMeanSquare:
    def test_brute_force_oracle_p7(self):
        for ell in (1, 3, 6):
            for H in (1, 2, 3, 6, 7):
                got = window_mean_square(SumSpec(ell, P7), H)
                want = mean_square_oracle(ell, H, 7)
                assert got == pytest.approx(want, rel=1e-10), (ell, H)

    def test_endpoint_h_equals_one(self):
        for pm in (P7, P13, P101):
            p = int(pm)
            assert window_mean_square(SumSpec(1, pm), 1) == pytest.approx(
                p - 1, rel=1e-10
            )

    def test_endpoint_full_period(self):
        # Every window sums to -1, so the mean square is p * 1 = p.
        for pm in (P7, P13, P101):
            p = int(pm)
            assert window_mean_square(SumSpec(2, pm), p) == pytest.approx(
                p, rel=1e-10
            )

    def test_endpoint_one_short_of_period(self):
        for pm in (P7, P13, P101):
            p = int(pm)
            assert window_mean_square(SumSpec(1, pm), p - 1) == pytest.approx(
                2 * p - 3, rel=1e-10
            )


class TestSpectralIdentity:
    def test_identity_exhaustive_p13(self):
        for ell in range(1, 13):
            for H in range(1, 14):
                lhs = window_mean_square(SumSpec(ell, P13), H)
                rhs = spectral_mean_square(SumSpec(ell, P13), H)
                assert lhs == pytest.approx(rhs, rel=1e-9), (ell, H)

    def test_identity_p101(self):
        for ell in (1, 42, 100):
            for H in (1, 2, 7, 50, 64, 100, 101):
                lhs = window_mean_square(SumSpec(ell, P101), H)
                rhs = spectral_mean_square(SumSpec(ell, P101), H)
                assert lhs == pytest.approx(rhs, rel=1e-9), (ell, H)

    def test_fast_kernel_matches_slow_kernel(self):
        # The closed-form ratio-of-sines kernel, against the literal
        # geometric double sum it replaces.
        for ell in (1, 5):
            for H in (1, 3, 13, 20, 101):
                fast = spectral_mean_square(SumSpec(ell, P101), H)
                slow = spectral_mean_square_slow(SumSpec(ell, P101), H)
                assert fast == pytest.approx(slow, rel=1e-9), (ell, H)

    def test_spectral_endpoints(self):
        assert spectral_mean_square(SumSpec(1, P101), 1) == pytest.approx(100.0)
        assert spectral_mean_square(SumSpec(1, P101), 101) == pytest.approx(101.0)
        assert spectral_mean_square(SumSpec(1, P101), 100) == pytest.approx(199.0)


class TestWindowBound:
    def test_bound_formula(self):
        # H^2/p + 8pH, natural units.
        assert window_mean_square_bound(10, P101) == pytest.approx(
            100 / 101 + 8 * 101 * 10
        )

    def test_bound_holds_across_sweep(self):
        for pm in (P13, P101, P997):
            for ell in (1, 2):
                for H in (1, 4, 16, 64):
                    if H > int(pm):
                        continue
                    rep = check_window_mean_square(SumSpec(ell, pm), H)
                    assert rep.passed
                    assert rep.ratio <= 1.0

    def test_report_fields(self):
        rep = check_window_mean_square(SumSpec(1, P101), 16)
        assert rep.lhs == pytest.approx(window_mean_square(SumSpec(1, P101), 16))
        assert rep.bound == pytest.approx(window_mean_square_bound(16, P101))


class TestFamilyMeanSquare:
    def _family(self):
        return DisjointFamily(
            (IntInterval(2, 9), IntInterval(20, 26), IntInterval(50, 55)), H=8
        )

    def test_sum_of_squares_definition(self):
        fam = self._family()
        spec = SumSpec(3, P101)
        want = sum(
            abs(
                incomplete_kloosterman(spec, WindowSpec(iv.lo - 1, iv.size))
            )
            ** 2
            for iv in fam.intervals
        )
        assert family_mean_square(spec, fam) == pytest.approx(want, rel=1e-12)

    def test_frozen_bound_values(self):
        # 4096 * p * ln(H)^2 at two pinned points.
        assert family_mean_square_bound(2, P7) == pytest.approx(
            13775.5488150627, abs=1e-6
        )
        assert family_mean_square_bound(16, P101) == pytest.approx(
            3180183.840734, abs=1e-4
        )

    def test_bound_degenerates_below_two(self):
        with pytest.raises(DegenerateBound):
            family_mean_square_bound(1, P101)

    def test_check_passes(self):
        rep = check_family_mean_square(SumSpec(1, P101), self._family())
        assert rep.passed

    def test_trivial_bound(self):
        fam = self._family()
        assert trivial_family_bound(fam) == 8**2 + 7**2 + 6**2
        # Small families sit far under the log-square bound, but never
        # above the trivial one.
        spec = SumSpec(1, P101)
        assert family_mean_square(spec, fam) <= trivial_family_bound(fam) + 1e-9


class TestDyadicPlan:
    def test_worked_example(self):
        plan = dyadic_plan(5, 4)
        assert plan.t == 3
        assert plan.depths == (1, 3)
        assert plan.blocks == ((0, 4), (4, 1))
        assert plan.k == 5

    def test_k_equals_2h(self):
        plan = dyadic_plan(8, 4)
        assert plan.t == 3
        assert plan.blocks == ((0, 8),)

    def test_k_one(self):
        plan = dyadic_plan(1, 4)
        assert plan.blocks == ((0, 1),)
        assert plan.depths == (3,)

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidK):
            dyadic_plan(0, 4)
        with pytest.raises(InvalidK):
            dyadic_plan(9, 4)

    @given(st.integers(min_value=1, max_value=6))
    @settings(max_examples=6)
    def test_tiling_exhaustive(self, hexp):
        H = 2**hexp
        for k in range(1, 2 * H + 1):
            plan = dyadic_plan(k, H)
            # Blocks tile {0, ..., k-1} contiguously.
            cursor = 0
            for off, length in plan.blocks:
                assert off == cursor
                cursor += length
            assert cursor == k
            # Depths strictly increase, lengths are the matching powers.
            assert list(plan.depths) == sorted(set(plan.depths))
            for d, (off, length) in zip(plan.depths, plan.blocks):
                assert length == 2 ** (plan.t - d)
                assert off % length == 0
                assert off // length < 2**d

    def test_odd_h_uses_next_power(self):
        # H = 5: windows up to 2H = 10 need t = 4 (2^4 = 16 >= 10).
        plan = dyadic_plan(10, 5)
        assert plan.t == 4

    def test_validation_rejects_bad_blocks(self):
        with pytest.raises(ValueError):
            DyadicPlan(t=3, depths=(1, 3), blocks=((0, 4), (5, 1)))
        with pytest.raises(ValueError):
            DyadicPlan(t=3, depths=(3, 1), blocks=((0, 1), (1, 4)))


class TestReconstruction:
    def test_matches_direct_window(self):
        spec = SumSpec(2, P101)
        for H in (4, 8):
            for k in (1, 3, H, 2 * H - 1, 2 * H):
                plan = dyadic_plan(k, H)
                for n in (0, 10, 95):
                    got = reconstruct_window_sum(spec, n, plan)
                    want = incomplete_kloosterman(spec, WindowSpec(n, k))
                    assert got == pytest.approx(want, abs=1e-10), (H, k, n)

    def test_wrapping_reconstruction(self):
        spec = SumSpec(1, P13)
        plan = dyadic_plan(6, 4)
        got = reconstruct_window_sum(spec, 11, plan)  # crosses the period
        want = incomplete_kloosterman(spec, WindowSpec(11, 6))
        assert got == pytest.approx(want, abs=1e-10)


class TestHooleyScan:
    def test_frozen_regression(self):
        stats = hooley_scan(SumSpec(1, PrimeModulus(10007)), 32)
        assert stats.p == 10007
        assert stats.ell == 1
        assert stats.H == 32
        assert stats.max_abs == pytest.approx(14.446585537524282, rel=1e-9)
        assert stats.max_ratio == pytest.approx(2.553819649643731, rel=1e-9)
        assert stats.mean_sq_over_H == pytest.approx(0.9906331253073545, rel=1e-9)
        assert stats.argmax_n == 6174

    def test_ratio_normalization(self):
        stats = hooley_scan(SumSpec(1, P101), 16)
        assert stats.max_ratio == pytest.approx(stats.max_abs / 4.0)

    def test_mean_square_consistency(self):
        stats = hooley_scan(SumSpec(2, P101), 16)
        want = window_mean_square(SumSpec(2, P101), 16) / (101 * 16)
        assert stats.mean_sq_over_H == pytest.approx(want, rel=1e-9)

    def test_full_period_degenerate(self):
        # Every window sums to -1 at H = p.
        stats = hooley_scan(SumSpec(1, P101), 101)
        assert stats.max_abs == pytest.approx(1.0, abs=1e-9)

    def test_argmax_is_smallest_start(self):
        stats = hooley_scan(SumSpec(1, P101), 101)
        # All windows tie at magnitude 1; the reported start must be the
        # smallest, which is n = 0.
        assert stats.argmax_n == 0
