"""Modular arithmetic layer: primality, inversion, batch inversion."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klab.modarith import (
    PrimeModulus,
    ZeroNotInvertible,
    batch_inv,
    inv_mod,
    is_prime_u64,
    mul_mod,
)


def _sieve(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, int(limit**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return flags


class TestIsPrime:
    def test_agrees_with_sieve_to_one_million(self):
        limit = 1_000_000
        flags = _sieve(limit)
        mismatches = [n for n in range(limit + 1) if is_prime_u64(n) != bool(flags[n])]
        assert mismatches == []

    def test_strong_pseudoprime_stress_value(self):
        # 3215031751 fools single-base Fermat tests for several small
        # bases; the full witness set must reject it.
        assert 3215031751 == 151 * 751 * 28351
        assert not is_prime_u64(3215031751)

    def test_large_known_primes(self):
        assert is_prime_u64(2**61 - 1)
        assert is_prime_u64(1000003)
        assert not is_prime_u64(2**61 + 1)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            is_prime_u64(-1)
        with pytest.raises(ValueError):
            is_prime_u64(2**64)
        with pytest.raises(TypeError):
            is_prime_u64(7.0)

    @given(st.integers(min_value=2, max_value=10**6))
    @settings(max_examples=200)
    def test_composite_has_witness_factor(self, n):
        if not is_prime_u64(n):
            assert any(n % d == 0 for d in range(2, min(n, 1000)) if d * d <= n) or any(
                n % d == 0 for d in range(2, int(n**0.5) + 1)
            )


class TestPrimeModulus:
    def test_basic_fields(self):
        pm = PrimeModulus(101)
        assert pm.p == 101
        assert int(pm) == 101
        assert pm.sqrt_p == pytest.approx(math.sqrt(101))
        assert pm.log_p == pytest.approx(math.log(101))

    def test_rejects_composite(self):
        with pytest.raises(ValueError):
            PrimeModulus(91)

    def test_rejects_two(self):
        with pytest.raises(ValueError):
            PrimeModulus(2)

    def test_rejects_huge(self):
        with pytest.raises(ValueError):
            PrimeModulus(2**63 + 9)  # beyond the supported range

    def test_hashable_and_frozen(self):
        pm = PrimeModulus(7)
        assert hash(pm) == hash(PrimeModulus(7))
        with pytest.raises(Exception):
            pm.p = 11


class TestInvMod:
    def test_worked_example(self):
        assert inv_mod(3, 7) == 5
        assert inv_mod(2, 7) == 4

    def test_zero_raises(self):
        with pytest.raises(ZeroNotInvertible):
            inv_mod(0, 7)
        with pytest.raises(ZeroNotInvertible):
            inv_mod(14, 7)

    @given(st.integers(min_value=1, max_value=10**6))
    @settings(max_examples=300)
    def test_roundtrip_mod_1000003(self, a):
        p = 1000003
        x = inv_mod(a, p)
        assert 1 <= x < p
        assert (a * x) % p == 1

    def test_negative_input_normalized(self):
        p = 101
        assert (inv_mod(-3, p) * (-3)) % p == 1

    def test_large_prime(self):
        p = 2**61 - 1
        a = 123456789123456789 % p
        assert (inv_mod(a, p) * a) % p == 1


class TestMulMod:
    def test_small(self):
        assert mul_mod(3, 4, 7) == 5

    def test_products_beyond_64_bits(self):
        p = 2**63 - 25  # largest prime below 2**63
        a = p - 2
        b = p - 3
        assert mul_mod(a, b, p) == (a * b) % p

    @given(
        st.integers(min_value=0, max_value=2**63 - 26),
        st.integers(min_value=0, max_value=2**63 - 26),
    )
    @settings(max_examples=100)
    def test_matches_python_bigint(self, a, b):
        p = 2**63 - 25
        assert mul_mod(a, b, p) == (a * b) % p


class TestBatchInv:
    def test_worked_example(self):
        assert batch_inv([1, 2, 3], 7) == [1, 4, 5]

    def test_empty(self):
        assert batch_inv([], 7) == []

    def test_permutation_property(self):
        # Inverting all nonzero residues permutes them.
        p = 101
        out = batch_inv(range(1, p), p)
        assert sorted(out) == list(range(1, p))

    def test_matches_scalar_route(self):
        p = 997
        vals = [1, 5, 996, 123, 800]
        assert batch_inv(vals, p) == [inv_mod(v, p) for v in vals]

    def test_zero_reports_offending_index(self):
        with pytest.raises(ZeroNotInvertible) as exc_info:
            batch_inv([3, 5, 0, 2], 7)
        assert exc_info.value.index == 2

    def test_multiple_of_p_reports_index(self):
        with pytest.raises(ZeroNotInvertible) as exc_info:
            batch_inv([3, 14, 2], 7)
        assert exc_info.value.index == 1

    @given(st.lists(st.integers(min_value=1, max_value=996), min_size=1, max_size=50))
    @settings(max_examples=100)
    def test_agrees_with_inv_mod(self, vals):
        p = 997
        assert batch_inv(vals, p) == [inv_mod(v, p) for v in vals]
