import random

import pytest
from hypothesis import given, settings, strategies as st

from walshcode.cyclo import CycInt
from walshcode.functions import (FnSpec, fn_norm, fn_normalize, fn_power,
                                 fn_scalar_zero, fn_trace_power)
from walshcode.galois import PRIME, field_new
from walshcode.walsh import (fast_wht, parseval_component, spectrum_full,
                             spectrum_hist, walsh_scalar, walsh_table,
                             walsh_vectorial)


# ---------------------------------------------------------------------------
# butterfly kernel
# ---------------------------------------------------------------------------

def test_fwht_all_ones():
    out = fast_wht([1] * 16)
    assert out == [16] + [0] * 15


def test_fwht_two_point():
    assert fast_wht([1, -1]) == [0, 2]


def test_fwht_rejects_bad_length():
    with pytest.raises(ValueError):
        fast_wht([1, 2, 3])


def test_fwht_matches_direct_sum_on_gf1024():
    rng = random.Random(99)
    ctx = field_new(2, 1, 10)
    tbl = tuple(rng.randrange(2) for _ in range(1024))
    f = FnSpec("scalar", ctx, tbl, "rnd")
    full = walsh_table(f)
    for _ in range(50):
        lam = rng.randrange(1024)
        direct = sum(
            1 - 2 * ((tbl[x] + ctx.trace(ctx.mul(lam, x), PRIME)) % 2)
            for x in ctx.elements()
        )
        assert full[lam].as_int() == direct


@settings(max_examples=25)
@given(st.lists(st.integers(-8, 8), min_size=8, max_size=8))
def test_fwht_involution_up_to_scale(vals):
    assert fast_wht(fast_wht(vals)) == [8 * v for v in vals]


# ---------------------------------------------------------------------------
# scalar / vectorial transforms
# ---------------------------------------------------------------------------

def test_zero_function_orthogonality(gf8):
    f = fn_scalar_zero(gf8)
    assert walsh_scalar(f, 0).as_int() == 8
    for lam in gf8.units():
        assert walsh_scalar(f, lam).is_zero()


def test_norm_walsh_at_zero(gf4):
    assert walsh_scalar(fn_norm(gf4), 0).as_int() == -2


def test_trace_cube_spectrum_gf8(gf8):
    vals = {w.as_int() for w in walsh_table(fn_trace_power(gf8, 3))}
    assert vals <= {0, 4, -4}
    assert 4 in vals or -4 in vals


def test_vectorial_identity_orthogonality(gf8):
    F = fn_power(gf8, 1)
    for v in gf8.units():
        for lam in gf8.elements():
            w = walsh_vectorial(F, v, lam).as_int()
            assert w == (8 if lam == v else 0)


def test_gold_values_gf32(gf32):
    F = fn_power(gf32, 3)
    for v in gf32.units():
        vals = {w.as_int() for w in walsh_table(F, v)}
        assert vals <= {0, 8, -8}


def test_bent_component_at_zero(gf4):
    # normalized bent component: |W(v, 0)|^2 = q^n
    w = walsh_scalar(fn_norm(gf4), 0)
    assert w.norm2().as_int() == 4


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def test_norm_classifies_bent(gf4):
    spec = spectrum_full(fn_norm(gf4))
    assert spec.amplitude_class == "bent"
    assert sorted(w.as_int() for w in walsh_table(fn_norm(gf4))) == [-2, 2, 2, 2]


def test_gold_gf32_classifies_almost_bent(gf32):
    spec = spectrum_full(fn_power(gf32, 3))
    assert spec.amplitude_class == "almost_bent"
    assert spec.s == 1


def test_cube_gf16_vectorial_has_no_single_amplitude(gf16):
    """The quadratic cube map on a degree-4 field mixes bent and 2-plateaued
    components (squared values 16 and 64 both occur), so the vectorial
    classification must refuse a single s; the scalar trace composition is
    honestly 2-plateaued."""
    spec = spectrum_full(fn_power(gf16, 3))
    assert spec.amplitude_class == "unclassified"
    assert set(spec.component_s.values()) == {0, 2}
    assert set(spec.hist) == {0, 16, 64}
    scalar = spectrum_full(fn_trace_power(gf16, 3))
    assert scalar.amplitude_class == "plateaued"
    assert scalar.s == 2


def test_x5_gf64_uniformly_2_plateaued():
    ctx = field_new(2, 1, 6)
    spec = spectrum_full(fn_power(ctx, 5))
    assert spec.amplitude_class == "plateaued"
    assert spec.s == 2


def test_plateau_zero_support_count(gf32):
    # per component: 2^m - 2^(m-s) zeros for p = 2
    F = fn_power(gf32, 3)
    for v in list(gf32.units())[:5]:
        zeros = sum(1 for w in walsh_table(F, v) if w.is_zero())
        assert zeros == 2**5 - 2**4


def test_spectrum_histogram_gold_m5(gf32):
    assert spectrum_hist(fn_power(gf32, 3)) == {0: 496, 64: 496}


def test_keep_values(gf4):
    spec = spectrum_full(fn_norm(gf4), keep_values=True)
    assert spec.values[0] == CycInt.integer(2, -2)


# ---------------------------------------------------------------------------
# Parseval
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", [8, 10, 12])
def test_parseval_random_functions(n):
    ctx = field_new(2, 1, n)
    rng = random.Random(1000 + n)
    rounds = {8: 40, 10: 40, 12: 20}[n]
    for _ in range(rounds):
        tbl = tuple(rng.randrange(2) for _ in range(ctx.order))
        f = FnSpec("scalar", ctx, tbl, "rnd")
        assert parseval_component(f)


def test_parseval_catalog_and_odd_p(gf27):
    assert parseval_component(fn_power(gf27, 2), v=1)
    assert parseval_component(fn_power(gf27, 4), v=2)
    ctx = field_new(2, 1, 5)
    assert parseval_component(fn_power(ctx, 3), v=7)


def test_ternary_square_is_vectorial_bent(gf27):
    spec = spectrum_full(fn_power(gf27, 2))
    assert spec.amplitude_class == "bent"
    assert spec.s == 0


def test_normalization_multiplies_by_global_root(gf27):
    """Shifting the output multiplies every coefficient by one fixed root of
    unity: checked exactly in the cyclotomic ring."""
    rng = random.Random(5)
    tbl = tuple(rng.randrange(27) for _ in range(27))
    f = FnSpec("vectorial", gf27, tbl, "rnd", cod=gf27)
    g = fn_normalize(f)
    for v in (1, 5, 20):
        root = CycInt.root(3, (-gf27.trace(gf27.mul(v, f.table[0]), PRIME)) % 3)
        wf = walsh_table(f, v)
        wg = walsh_table(g, v)
        assert all(wgi == root * wfi for wfi, wgi in zip(wf, wg))
