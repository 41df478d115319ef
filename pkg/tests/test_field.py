"""Field-layer checks: construction, axioms, character, canonical roots."""

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nhspectrum.field import (
    FieldCtx,
    ReducibleModulusError,
    irreducible_witness,
    make_context,
    smallest_irreducible,
)

# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------


def _poly_from_index(ctx, a):
    return list(ctx.coeffs(a))


def _poly_mul_mod(ctx, pa, pb):
    """Schoolbook product reduced by long division; independent of FieldCtx.mul."""
    mod = list(ctx.modulus)
    prod = [0] * (len(pa) + len(pb) - 1)
    for i, x in enumerate(pa):
        for j, y in enumerate(pb):
            prod[i + j] = (prod[i + j] + x * y) % 3
    while len(prod) >= len(mod):
        lead = prod[-1]
        if lead:
            shift = len(prod) - len(mod)
            for k in range(len(mod)):
                prod[shift + k] = (prod[shift + k] - lead * mod[k]) % 3
        prod.pop()
    prod += [0] * (ctx.n - len(prod))
    return prod[: ctx.n]


def _euclid_inverse(ctx, a):
    """Extended Euclid over GF(3)[x]; returns the inverse element index."""

    def trim(p):
        p = list(p)
        while p and p[-1] == 0:
            p.pop()
        return p

    def divmod_poly(num, den):
        num, den = trim(num), trim(den)
        quot = [0] * max(1, len(num) - len(den) + 1)
        inv_lead = 1 if den[-1] == 1 else 2
        while len(num) >= len(den) and num:
            shift = len(num) - len(den)
            factor = (num[-1] * inv_lead) % 3
            quot[shift] = factor
            for i, d in enumerate(den):
                num[shift + i] = (num[shift + i] - factor * d) % 3
            num = trim(num)
        return quot, num

    def mul(pa, pb):
        out = [0] * (len(pa) + len(pb) - 1 or 1)
        for i, x in enumerate(pa):
            for j, y in enumerate(pb):
                out[i + j] = (out[i + j] + x * y) % 3
        return trim(out)

    def sub(pa, pb):
        width = max(len(pa), len(pb))
        pa = pa + [0] * (width - len(pa))
        pb = pb + [0] * (width - len(pb))
        return trim([(x - y) % 3 for x, y in zip(pa, pb)])

    r0, r1 = list(ctx.modulus), trim(_poly_from_index(ctx, a))
    s0, s1 = [], [1]
    while r1:
        q, rem = divmod_poly(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(q, s1))
    # r0 is the gcd, a nonzero constant; scale s0 by its inverse (1 or 2)
    assert len(r0) == 1
    scale = 1 if r0[0] == 1 else 2
    inv = [(c * scale) % 3 for c in s0]
    inv += [0] * (ctx.n - len(inv))
    return ctx.element_from_coeffs(inv[: ctx.n])


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def test_default_modulus_n3_is_smallest_irreducible(f3):
    assert f3.modulus_str == "1201"  # x^3 + 2x + 1
    # every earlier candidate in counter order has a factor
    for idx in range(7):
        digits = [(idx // 3**i) % 3 for i in range(3)] + [1]
        assert irreducible_witness(digits) is not None, digits
    assert irreducible_witness([1, 2, 0, 1]) is None


def test_x_cubed_plus_x_rejected_with_root_factor():
    with pytest.raises(ReducibleModulusError) as excinfo:
        make_context(3, "0101")  # x^3 + x, divisible by x
    assert excinfo.value.factor_str == "01"


def test_reducible_modulus_rejected_with_factor():
    bad = [1, 1, 1, 0, 0, 1]  # x^5 + x^2 + x + 1, vanishes at x = 2
    with pytest.raises(ReducibleModulusError):
        make_context(5, bad)


def test_even_and_out_of_range_n_rejected():
    with pytest.raises(ValueError):
        make_context(4)
    with pytest.raises(ValueError):
        make_context(1)
    with pytest.raises(ValueError):
        make_context(15)


def test_non_monic_or_wrong_degree_modulus_rejected():
    with pytest.raises(ValueError):
        make_context(3, "1202")  # leading digit 2
    with pytest.raises(ValueError):
        make_context(3, "12011")  # degree 4


def test_n5_context_size(f5):
    assert f5.q == 243
    assert len(list(f5.elements())) == 243


def test_smallest_irreducible_has_no_witness():
    for n in (3, 5, 7):
        assert irreducible_witness(list(smallest_irreducible(n))) is None


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------


def test_mul_monomial_reduction(f3):
    x = f3.parse_element("010")
    x2 = f3.parse_element("001")
    assert f3.mul(x, x2) == f3.parse_element("210")  # x^3 = x + 2


def test_additive_structure_exhaustive(f3):
    for a in f3.elements():
        assert f3.add(a, f3.neg(a)) == 0
        assert f3.add(a, 0) == a
        assert f3.sub(a, a) == 0


def test_mul_identity_and_inverses_exhaustive(f3):
    for a in f3.elements():
        assert f3.mul(a, 1) == a
        assert f3.mul(a, 0) == 0
        if a:
            assert f3.mul(a, f3.inv(a)) == 1


def test_inv_of_constants(f5):
    assert f5.inv(1) == 1
    assert f5.inv(2) == 2  # 2 * 2 = 4 = 1


def test_inv_zero_rejected(f3):
    with pytest.raises(ZeroDivisionError):
        f3.inv(0)


def test_inv_matches_extended_euclid(f3, f5, f7):
    rng = random.Random(7)
    for ctx in (f3, f5, f7):
        for _ in range(25):
            a = rng.randrange(1, ctx.q)
            assert ctx.inv(a) == _euclid_inverse(ctx, a)
            assert ctx.inv(a) == ctx.pow(a, ctx.q - 2)


def test_mul_matches_schoolbook_oracle(f5):
    rng = random.Random(11)
    for _ in range(200):
        a = rng.randrange(f5.q)
        b = rng.randrange(f5.q)
        expected = f5.element_from_coeffs(
            _poly_mul_mod(f5, _poly_from_index(f5, a), _poly_from_index(f5, b))
        )
        assert f5.mul(a, b) == expected


def test_field_axioms_random(f5, f7):
    rng = random.Random(3)
    for ctx in (f5, f7):
        for _ in range(500):
            a, b, c = (rng.randrange(ctx.q) for _ in range(3))
            assert ctx.mul(a, b) == ctx.mul(b, a)
            assert ctx.mul(a, ctx.mul(b, c)) == ctx.mul(ctx.mul(a, b), c)
            assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))


@given(a=st.integers(0, 26), b=st.integers(0, 26), c=st.integers(0, 26))
@settings(max_examples=200, deadline=None)
def test_axioms_hypothesis_n3(a, b, c):
    ctx = _HYPO_CTX
    assert ctx.add(a, b) == ctx.add(b, a)
    assert ctx.add(a, ctx.add(b, c)) == ctx.add(ctx.add(a, b), c)
    assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))


_HYPO_CTX = make_context(3)


# ---------------------------------------------------------------------------
# pow / chi / sqrt
# ---------------------------------------------------------------------------


def test_pow_conventions(f3):
    assert f3.pow(0, 0) == 1
    assert f3.pow(0, f3.q - 2) == 0
    assert f3.pow(5, 1) == 5


def test_pow_lagrange_and_frobenius(f3, f5, f7):
    rng = random.Random(13)
    for ctx in (f3, f5, f7):
        for _ in range(50):
            a = rng.randrange(1, ctx.q)
            assert ctx.pow(a, ctx.q - 1) == 1
            assert ctx.pow(a, ctx.q) == a


def test_generator_is_nonsquare(f3, f5, f7):
    for ctx in (f3, f5, f7):
        assert ctx.pow(ctx.generator, (ctx.q - 1) // 2) == 2  # the element -1


def test_chi_basics(f3, f5, f7):
    for ctx in (f3, f5, f7):
        assert ctx.chi(0) == 0
        assert ctx.chi(1) == 1
        assert ctx.chi(ctx.neg(1)) == -1  # n odd
        rng = random.Random(17)
        for _ in range(50):
            a = rng.randrange(1, ctx.q)
            assert ctx.chi(ctx.mul(a, a)) == 1


def test_chi_multiplicative_exhaustive_n3(f3):
    for a in range(1, f3.q):
        for b in range(1, f3.q):
            assert f3.chi(f3.mul(a, b)) == f3.chi(a) * f3.chi(b)


def test_chi_square_count_and_balance(f3, f5):
    for ctx in (f3, f5):
        values = [ctx.chi(a) for a in ctx.elements()]
        assert values.count(1) == (ctx.q - 1) // 2
        assert values.count(-1) == (ctx.q - 1) // 2
        assert sum(values) == 0


def test_sqrt_canonical_all_squares_n3(f3):
    for a in range(1, f3.q):
        if f3.chi(a) == 1:
            r = f3.sqrt_canonical(a)
            assert f3.mul(r, r) == a
            assert f3.chi(r) == 1


def test_sqrt_canonical_of_one(f5):
    assert f5.sqrt_canonical(1) == 1


def test_sqrt_canonical_rejects_nonsquares(f3):
    with pytest.raises(ValueError):
        f3.sqrt_canonical(0)
    nonsquare = next(a for a in range(1, f3.q) if f3.chi(a) == -1)
    with pytest.raises(ValueError):
        f3.sqrt_canonical(nonsquare)


# ---------------------------------------------------------------------------
# enumeration, text format, vector layer
# ---------------------------------------------------------------------------


def test_elements_enumeration(f3, f5):
    for ctx in (f3, f5):
        elems = list(ctx.elements())
        assert elems[0] == 0
        assert len(elems) == ctx.q
        assert len(set(elems)) == ctx.q


def test_text_roundtrip(f3):
    a = f3.parse_element("120")
    assert f3.coeffs(a) == (1, 2, 0)
    assert f3.format_element(a) == "120"
    for a in f3.elements():
        assert f3.parse_element(f3.format_element(a)) == a


def test_parse_rejects_garbage(f3):
    with pytest.raises(ValueError):
        f3.parse_element("13")
    with pytest.raises(ValueError):
        f3.parse_element("")
    with pytest.raises(ValueError):
        f3.parse_element("1201")  # too many digits for n=3


def test_vector_ops_match_scalar_exhaustive_n3(f3):
    q = f3.q
    A = np.repeat(np.arange(q), q)
    B = np.tile(np.arange(q), q)
    add = f3.add_vec(A, B)
    sub = f3.sub_vec(A, B)
    mul = f3.mul_vec(A, B)
    for i in range(q * q):
        a, b = int(A[i]), int(B[i])
        assert int(add[i]) == f3.add(a, b)
        assert int(sub[i]) == f3.sub(a, b)
        assert int(mul[i]) == f3.mul(a, b)
    chi = f3.chi_vec(np.arange(q))
    pw = f3.pow_vec(np.arange(q), 13)
    for a in range(q):
        assert int(chi[a]) == f3.chi(a)
        assert int(pw[a]) == f3.pow(a, 13)


def test_vector_ops_match_scalar_random_n5(f5):
    rng = np.random.default_rng(23)
    A = rng.integers(0, f5.q, size=1000)
    B = rng.integers(0, f5.q, size=1000)
    add = f5.add_vec(A, B)
    mul = f5.mul_vec(A, B)
    for i in range(0, 1000, 7):
        assert int(add[i]) == f5.add(int(A[i]), int(B[i]))
        assert int(mul[i]) == f5.mul(int(A[i]), int(B[i]))


def test_mul_log_path_agrees_with_poly_path(f3):
    f3._log_tables()  # force table path for mul()
    for a in f3.elements():
        for b in f3.elements():
            assert f3.mul(a, b) == f3._mul_poly(a, b)


def test_pair_add_table_consistency(f3):
    pair = f3.pair_add_table()
    assert pair is not None
    for a in range(0, f3.q, 5):
        for b in range(0, f3.q, 3):
            assert int(pair[a, b]) == f3.add(a, b)


def test_context_determinism():
    a = make_context(5)
    b = make_context(5)
    assert a.modulus == b.modulus
    assert a.generator == b.generator
