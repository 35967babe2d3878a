import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from walshcode.functions import (CatalogError, FnSpec, fn_bent_monomial,
                                 fn_compose, fn_gold, fn_identity, fn_invert,
                                 fn_kasami, fn_mm_product, fn_niho, fn_norm,
                                 fn_normalize, fn_power,
                                 fn_primary_plateaued,
                                 fn_secondary_plateaued, fn_trace,
                                 fn_trace_power, fn_trace_square,
                                 fn_vectorial_zero, fn_welch, parse_fn)
from walshcode.galois import field_new
from walshcode.walsh import product_walsh, spectrum_full, walsh_table


def test_norm_table_gf4(gf4):
    assert fn_norm(gf4).table == (0, 1, 1, 1)


def test_trace_at_zero(gf8):
    assert fn_trace(gf8).table[0] == 0


def test_trace_square_is_trace_of_square(gf4):
    sq = fn_power(gf4, 2)
    assert fn_trace_square(gf4).table == fn_compose(fn_trace(gf4), sq).table


def test_power_identity(gf8):
    assert fn_power(gf8, 1).table == tuple(gf8.elements())


def test_cube_is_bijection_on_gf8(gf8):
    assert fn_power(gf8, 3).is_permutation()


@pytest.mark.parametrize("m", [3, 4])
def test_power_permutation_iff_gcd(m):
    ctx = field_new(2, 1, m)
    for d in range(1, ctx.order - 1):
        expected = math.gcd(d, ctx.order - 1) == 1
        assert fn_power(ctx, d).is_permutation() == expected


def test_invert_cube_is_fifth_power(gf8):
    assert fn_invert(fn_power(gf8, 3)).table == fn_power(gf8, 5).table


def test_invert_compose_gives_identity(gf8):
    f = fn_power(gf8, 3)
    assert fn_compose(fn_invert(f), f).table == fn_identity(gf8).table
    assert fn_invert(fn_invert(f)).table == f.table


def test_invert_refuses_non_bijection():
    ctx = field_new(2, 1, 6)
    with pytest.raises(ValueError):
        fn_invert(fn_power(ctx, 3))  # gcd(3, 63) = 3


def test_compose_with_identity(gf8):
    g = fn_power(gf8, 3)
    assert fn_compose(g, fn_identity(gf8)).table == g.table


@settings(max_examples=30)
@given(st.integers(0, 2**24 - 1), st.integers(0, 2**24 - 1),
       st.integers(0, 2**24 - 1))
def test_compose_associative(sa, sb, sc):
    ctx = field_new(2, 1, 3)
    n = ctx.order

    def tbl(seed):
        rng = random.Random(seed)
        return FnSpec("vectorial", ctx,
                      tuple(rng.randrange(n) for _ in range(n)), "rnd", cod=ctx)

    f, g, h = tbl(sa), tbl(sb), tbl(sc)
    assert fn_compose(fn_compose(f, g), h).table == \
        fn_compose(f, fn_compose(g, h)).table


def test_normalize_idempotent_and_constant(gf8):
    f = fn_power(gf8, 3)
    assert fn_normalize(f) is f
    const = FnSpec("vectorial", gf8, (5,) * 8, "const", cod=gf8)
    assert fn_normalize(const).table == (0,) * 8


def test_normalize_preserves_squared_spectrum(gf8):
    rng = random.Random(11)
    tbl = tuple(rng.randrange(8) for _ in range(8))
    f = FnSpec("vectorial", gf8, tbl, "rnd", cod=gf8)
    g = fn_normalize(f)
    for v in gf8.units():
        sq_f = sorted((w.norm2() for w in walsh_table(f, v)), key=str)
        sq_g = sorted((w.norm2() for w in walsh_table(g, v)), key=str)
        assert sq_f == sq_g


# ---------------------------------------------------------------------------
# named exponent families
# ---------------------------------------------------------------------------

def test_gold_conditions():
    with pytest.raises(CatalogError):
        fn_gold(field_new(2, 1, 4), 1)  # even m
    with pytest.raises(CatalogError):
        fn_gold(field_new(2, 1, 5), 5)  # gcd
    with pytest.raises(CatalogError):
        fn_gold(field_new(2, 1, 5), 3)  # above (m-1)/2
    assert fn_gold(field_new(2, 1, 5), 2).table == \
        fn_power(field_new(2, 1, 5), 5).table


def test_kasami_conditions():
    with pytest.raises(CatalogError):
        fn_kasami(field_new(2, 1, 3), 2)  # i > (m-1)/2
    assert fn_kasami(field_new(2, 1, 5), 2).table == \
        fn_power(field_new(2, 1, 5), 13).table


def test_welch_and_niho_exponents():
    assert fn_welch(field_new(2, 1, 5)).meta == "welch"
    assert fn_welch(field_new(2, 1, 5)).table == \
        fn_power(field_new(2, 1, 5), 7).table
    assert fn_niho(field_new(2, 1, 5)).table == \
        fn_power(field_new(2, 1, 5), 5).table       # m = 1 mod 4
    assert fn_niho(field_new(2, 1, 7)).table == \
        fn_power(field_new(2, 1, 7), 39).table      # m = 3 mod 4
    with pytest.raises(CatalogError):
        fn_niho(field_new(2, 1, 4))


@pytest.mark.parametrize("m", [3, 5, 7])
def test_ab_catalog_classifies_almost_bent(m):
    """Every admissible named exponent classifies as almost bent."""
    ctx = field_new(2, 1, m)
    fns = [fn_gold(ctx, i) for i in range(1, (m - 1) // 2 + 1)
           if math.gcd(i, m) == 1]
    fns += [fn_kasami(ctx, i) for i in range(2, (m - 1) // 2 + 1)
            if math.gcd(i, m) == 1]
    fns += [fn_welch(ctx), fn_niho(ctx)]
    assert fns
    for fn in fns:
        spec = spectrum_full(fn)
        assert spec.amplitude_class == "almost_bent", fn.meta
        assert spec.s == 1


@pytest.mark.parametrize("m", [2, 4, 6])
def test_bent_monomial_verified_bent(m):
    ctx = field_new(2, 1, m)
    b = fn_bent_monomial(ctx)
    assert spectrum_full(b).amplitude_class == "bent"
    if m == 2:
        assert b.table == fn_norm(ctx).table


def test_bent_monomial_rejects_odd_m():
    with pytest.raises(CatalogError):
        fn_bent_monomial(field_new(2, 1, 3))


def test_mm_product_uniformly_plateaued(gf16):
    spec = spectrum_full(fn_mm_product(gf16))
    assert spec.amplitude_class == "plateaued"
    assert spec.s == 2


# ---------------------------------------------------------------------------
# primary / secondary constructions
# ---------------------------------------------------------------------------

def test_primary_construction_componentwise_plateaued(gf4):
    F = fn_primary_plateaued(gf4, fn_identity(gf4), fn_vectorial_zero(gf4),
                             fn_vectorial_zero(gf4), 1)
    assert F.table[0] == 0
    spec = spectrum_full(F)
    # plateaued in every component, but with no single amplitude
    assert all(s is not None for s in spec.component_s.values())
    assert len(set(spec.component_s.values())) > 1


def test_primary_construction_guards(gf4):
    with pytest.raises(CatalogError):
        fn_primary_plateaued(gf4, fn_power(gf4, 2), fn_vectorial_zero(gf4),
                             fn_vectorial_zero(gf4), 2)  # gcd(2, 2) != 1
    const = FnSpec("vectorial", gf4, (1, 1, 1, 1), "const", cod=gf4)
    with pytest.raises(CatalogError):
        fn_primary_plateaued(gf4, const, fn_vectorial_zero(gf4),
                             fn_vectorial_zero(gf4), 1)


def test_secondary_identity_on_bit():
    ctx1 = field_new(2, 1, 1)
    H = fn_secondary_plateaued(fn_identity(ctx1), fn_identity(ctx1))
    assert H.table == tuple(range(4))
    assert H.table[0] == 0


def test_secondary_factorization_gold_pair(gf8):
    F = fn_power(gf8, 3)
    H = fn_secondary_plateaued(F, F)
    WF = {v: [w.as_int() for w in walsh_table(F, v)] for v in range(8)}
    for a in range(8):
        for b in range(8):
            for u in range(8):
                for v in range(8):
                    lhs = product_walsh(H, 3, 3, a, b, u, v)
                    assert lhs == WF[a][u] * WF[b][v]


def test_secondary_mixed_characteristic_rejected(gf8, gf27):
    with pytest.raises(ValueError):
        fn_secondary_plateaued(fn_identity(gf8), fn_identity(gf27))


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

def test_descriptor_parsing(gf32):
    assert parse_fn(gf32, "gold:i=1").table == fn_power(gf32, 3).table
    assert parse_fn(gf32, "power:d=5").table == fn_power(gf32, 5).table
    assert parse_fn(gf32, "id").is_permutation()
    assert parse_fn(gf32, "tr").kind == "scalar"
    with pytest.raises(CatalogError):
        parse_fn(gf32, "nonsense")
    with pytest.raises(CatalogError):
        parse_fn(gf32, "gold:j=1")
