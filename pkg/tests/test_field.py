import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ternary_cyclic.field import (
    CapExceeded,
    FieldArray,
    FieldError,
    NotIrreducible,
    NotPrimitive,
    check_cap,
    ctx_default,
    ctx_new,
    frobenius,
    half_power,
    parse_field_spec,
)
from ternary_cyclic.polyf3 import TritPoly, is_irreducible, monic_polys, parse_poly, poly_order

EX1 = "x^4+2x^3+2"
EX2 = "x^6+2x^4+x^2+2x+2"


class TestContexts:
    def test_example_moduli(self):
        c = ctx_new(EX1)
        assert (c.m, c.n) == (4, 80)
        c = ctx_new(EX2)
        assert (c.m, c.n) == (6, 728)

    def test_not_irreducible(self):
        with pytest.raises(NotIrreducible):
            ctx_new("x^2+2")

    def test_not_primitive_reports_order(self):
        # x^2+1 is irreducible with order 4
        with pytest.raises(NotPrimitive) as info:
            ctx_new("x^2+1")
        assert info.value.order == 4

    def test_default_small(self):
        assert str(ctx_default(1).modulus) == "x+1"
        quads = [p for p in monic_polys(2) if p.coeff(0) and is_irreducible(p) and poly_order(p) == 8]
        first = min(quads, key=lambda p: tuple(p.coeffs))
        assert ctx_default(2).modulus == first

    @pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
    def test_default_is_lexicographically_smallest(self, m):
        # unfiltered scan, coefficients compared from the constant term up
        cands = [p for p in monic_polys(m) if p.coeff(0) and is_irreducible(p) and poly_order(p) == 3**m - 1]
        assert ctx_default(m).modulus == min(cands, key=lambda p: tuple(p.coeffs))

    def test_default_out_of_range(self):
        with pytest.raises(FieldError):
            ctx_default(0)
        with pytest.raises(FieldError):
            ctx_default(41)

    def test_field_spec(self):
        assert parse_field_spec(f"m=4,mod={EX1}").modulus == parse_poly(EX1)
        assert parse_field_spec("m=3") == ctx_default(3)
        with pytest.raises(ValueError):
            parse_field_spec(f"m=5,mod={EX1}")


class TestArithmetic:
    def test_alpha_order(self):
        c = ctx_new(EX1)
        assert c.alpha**80 == c.one
        assert all(c.alpha**k != c.one for k in range(1, 80))

    def test_inverse(self):
        c = ctx_new(EX1)
        assert c.alpha.inverse() * c.alpha == c.one
        with pytest.raises(ZeroDivisionError):
            c.zero.inverse()

    def test_pow_zero(self):
        c = ctx_new(EX1)
        assert all(x**0 == c.one for x in c.all_elements() if not x.is_zero())

    def test_pow_reduces_exponent(self):
        c = ctx_new(EX2)
        x = c.alpha_pow(17)
        assert x ** (5 + 3 * c.n) == x**5

    def test_frobenius(self):
        c = ctx_default(6)
        a = c.alpha
        assert frobenius(a, 0) == a
        assert frobenius(a, 6) == a
        assert frobenius(a, 3) == a**27

    def test_half_power(self):
        c = ctx_default(5)
        assert half_power(c.one) == 1
        assert half_power(c.alpha) == -1
        assert half_power(c.alpha**2) == 1
        with pytest.raises(FieldError):
            half_power(c.zero)

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_group_laws_exhaustive(self, m):
        c = ctx_default(m)
        for x in c.all_elements():
            if x.is_zero():
                continue
            assert x**c.n == c.one
            assert x ** (c.n // 2) in (c.one, -c.one)
            assert x * x.inverse() == c.one

    def test_frobenius_is_a_ring_map(self):
        rng = random.Random(3)
        for m in range(1, 9):
            c = ctx_default(m)
            for _ in range(1000 // 8):
                x = c.from_index(rng.randrange(c.size))
                y = c.from_index(rng.randrange(c.size))
                k = rng.randrange(m)
                assert frobenius(x + y, k) == frobenius(x, k) + frobenius(y, k)
                assert frobenius(x * y, k) == frobenius(x, k) * frobenius(y, k)

    @settings(max_examples=200)
    @given(st.integers(0, 728), st.integers(0, 728), st.integers(0, 728))
    def test_field_axioms(self, i, j, k):
        c = ctx_new(EX2)
        x, y, z = c.from_index(i), c.from_index(j), c.from_index(k)
        assert x * (y + z) == x * y + x * z
        assert (x * y) * z == x * (y * z)
        assert x + y - y == x
        assert x + (-x) == c.zero


class TestExhaustive:
    def test_small_fields(self):
        assert [x.to_int() for x in ctx_default(1).all_elements()] == [0, 1, 2]
        els = list(ctx_default(2).all_elements())
        assert len(els) == 9 and len(set(els)) == 9

    def test_powers_cover_nonzero(self):
        c = ctx_new(EX1)
        els = list(c.all_elements())
        assert len(els) == 81
        nonzero = {x for x in els if not x.is_zero()}
        powers = {c.alpha**i for i in range(80)}
        assert len(nonzero) == 80 and powers == nonzero

    def test_cap(self):
        with pytest.raises(CapExceeded):
            check_cap(14)
        check_cap(14, force=True)
        with pytest.raises(CapExceeded):
            next(ctx_default(14).all_elements())

    @pytest.mark.parametrize("m", [2, 5, 7])
    def test_array_ops_match_scalar(self, m):
        c = ctx_default(m)
        rng = np.random.default_rng(m)
        a = rng.integers(0, c.size, 300)
        b = rng.integers(0, c.size, 300)
        xa, xb = FieldArray.from_index(c, a), FieldArray.from_index(c, b)
        for op in ("__add__", "__sub__", "__mul__"):
            got = getattr(xa, op)(xb).index()
            want = [getattr(c.from_index(int(i)), op)(c.from_index(int(j))).index for i, j in zip(a, b)]
            assert list(got) == want

    @pytest.mark.parametrize("m", [3, 6])
    def test_power_table_against_log_tables(self, m):
        c = ctx_default(m)
        exp, log = c.log_tables
        rng = random.Random(m)
        for e in [1, 2, 3, c.n // 2, c.n - 1, c.n, c.n + 5] + [rng.randrange(1, 5 * c.n) for _ in range(20)]:
            table = c.power_table(e)
            want = exp[(log[1:] * e) % c.n]
            assert table[0] == 0
            assert np.array_equal(table[1:], want)

    def test_zech(self):
        c = ctx_default(4)
        exp, log = c.log_tables
        for k in range(c.n):
            s = c.alpha_pow(k) + 1
            assert c.zech[k] == (-1 if s.is_zero() else log[s.index])


class TestRootStructure:
    def test_roots_are_a_frobenius_orbit(self):
        """Roots of an irreducible of degree r inside GF(3^r) are x, x^3, ..., all distinct."""
        rng = random.Random(11)
        pool = [p for r in range(1, 5) for p in monic_polys(r) if is_irreducible(p)]
        picks = [rng.choice(pool) for _ in range(50)]
        for p in picks:
            r = p.degree
            c = ctx_default(r)
            roots = [x for x in c.all_elements() if c.evaluate(p, x).is_zero()]
            assert len(roots) == r
            orbit = [frobenius(roots[0], k) for k in range(r)]
            assert len(set(orbit)) == r
            assert set(orbit) == set(roots)


def test_elements_print():
    c = ctx_new(EX1)
    assert repr(c.alpha**7) == "α^7"
    assert c.alpha.coords == (0, 1, 0, 0)
    assert c.from_index(5).as_poly() == TritPoly([2, 1])
