import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from walshcode.cyclo import CycInt
from walshcode.galois import (MID, PRIME, FieldCtx, field_new, is_prime,
                              poly_is_irreducible, poly_mod)


# ---------------------------------------------------------------------------
# construction / modulus selection
# ---------------------------------------------------------------------------

def test_gf4_modulus_is_unique_quadratic(gf4):
    assert gf4.modulus == (1, 1, 1)  # x^2 + x + 1


def test_prime_field_modulus_is_x():
    ctx = field_new(3, 1, 1)
    assert ctx.modulus == (0, 1)
    assert ctx.order == 3


def _oracle_smallest_irreducible_deg6():
    """Independent oracle: full trial division over every monic candidate in
    constant-term-first lexicographic order."""
    def divides(f, g):
        return not poly_mod(f, g, 2)

    def irreducible(f):
        for d in range(1, 3 + 1):
            for w in range(2**d):
                g = tuple((w >> i) & 1 for i in range(d)) + (1,)
                if divides(f, g):
                    return False
        return True

    for w in range(2**6):
        coeffs = tuple((w >> (5 - i)) & 1 for i in range(6)) + (1,)
        if irreducible(coeffs):
            return coeffs
    raise AssertionError("no irreducible found")


def test_gf64_modulus_matches_trial_division_oracle():
    assert field_new(2, 1, 6).modulus == _oracle_smallest_irreducible_deg6()


def test_modulus_is_irreducible_for_various_towers():
    for (p, r, m) in ((2, 1, 5), (3, 1, 3), (2, 2, 2), (5, 1, 2), (7, 1, 2)):
        ctx = field_new(p, r, m)
        assert poly_is_irreducible(ctx.modulus, p)
        assert len(ctx.modulus) == r * m + 1


def test_size_cap_and_primality_errors():
    with pytest.raises(ValueError):
        FieldCtx(4, 1, 2)
    with pytest.raises(ValueError):
        FieldCtx(2, 1, 30)


def test_primitive_has_full_order():
    for (p, r, m) in ((2, 1, 4), (3, 1, 2), (2, 2, 2)):
        ctx = field_new(p, r, m)
        assert ctx.mul_order(ctx.primitive) == ctx.order - 1


def test_index_of_zero_and_one():
    for (p, r, m) in ((2, 1, 3), (3, 1, 2), (5, 1, 2)):
        ctx = field_new(p, r, m)
        assert ctx.add(0, 7 % ctx.order) == 7 % ctx.order
        assert ctx.mul(1, 7 % ctx.order) == 7 % ctx.order


# ---------------------------------------------------------------------------
# trace / norm
# ---------------------------------------------------------------------------

def test_trace_of_generator_gf4(gf4):
    # omega has index 2; omega + omega^2 = 1
    assert gf4.trace(2, MID) == 1


def test_trace_of_zero_everywhere():
    for (p, r, m) in ((2, 1, 4), (3, 1, 3), (2, 2, 3)):
        ctx = field_new(p, r, m)
        assert ctx.trace(0, PRIME) == 0
        assert ctx.trace(0, MID) == 0


def test_trace_fiber_sizes(gf8):
    zeros = sum(1 for x in gf8.elements() if gf8.trace(x, PRIME) == 0)
    assert zeros == 4
    # each fiber of Tr_{q^m/q} has q^(m-1) elements
    ctx = field_new(2, 2, 3)
    from collections import Counter

    fibers = Counter(ctx.trace(x, MID) for x in ctx.elements())
    assert set(fibers.values()) == {ctx.q ** (ctx.m - 1)}
    assert len(fibers) == ctx.q


def test_norm_of_generator_gf4(gf4):
    assert gf4.norm(2, MID) == 1
    assert gf4.norm(1, MID) == 1


def test_norm_value_multiplicities(gf4):
    hits = [gf4.norm(x, MID) for x in gf4.units()]
    assert hits.count(1) == 3  # (4-1)/(2-1)


def test_norm_is_power_formula():
    for (p, r, m) in ((2, 1, 4), (3, 1, 2), (2, 2, 2)):
        ctx = field_new(p, r, m)
        e = (ctx.order - 1) // (ctx.q - 1)
        for x in ctx.units():
            assert ctx.norm(x, MID) == ctx.pow(x, e)


def test_norm_multiplicative():
    ctx = field_new(3, 1, 2)
    for x in ctx.elements():
        for y in ctx.elements():
            assert ctx.norm(ctx.mul(x, y), PRIME) == \
                (ctx.norm(x, PRIME) * ctx.norm(y, PRIME)) % 3


# ---------------------------------------------------------------------------
# field axioms on random triples
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("p,r,m", [(2, 1, 6), (3, 1, 3), (2, 2, 2), (7, 1, 2)])
def test_thousand_random_triples(p, r, m):
    ctx = field_new(p, r, m)
    rng = random.Random(20240811)
    for _ in range(1000):
        x, y, z = (rng.randrange(ctx.order) for _ in range(3))
        assert ctx.mul(x, ctx.add(y, z)) == ctx.add(ctx.mul(x, y), ctx.mul(x, z))
        assert ctx.trace(ctx.add(x, y), PRIME) == \
            (ctx.trace(x, PRIME) + ctx.trace(y, PRIME)) % p
        assert ctx.trace(ctx.add(x, y), MID) == \
            ctx.add(ctx.trace(x, MID), ctx.trace(y, MID))


@given(st.integers(0, 63), st.integers(0, 63))
@settings(max_examples=60)
def test_mul_commutes_and_inverts(x, y):
    ctx = field_new(2, 1, 6)
    assert ctx.mul(x, y) == ctx.mul(y, x)
    if x:
        assert ctx.mul(x, ctx.inv(x)) == 1


def test_trace_is_mid_linear():
    ctx = field_new(2, 2, 3)
    rng = random.Random(7)
    mids = ctx.mid_elements()
    for _ in range(200):
        u = rng.choice(mids)
        x = rng.randrange(ctx.order)
        assert ctx.trace(ctx.mul(u, x), MID) == ctx.mul(u, ctx.trace(x, MID))


# ---------------------------------------------------------------------------
# subfield embedding
# ---------------------------------------------------------------------------

def test_mid_subfield_size_and_closure():
    ctx = field_new(2, 2, 3)
    mids = ctx.mid_elements()
    assert len(mids) == 4
    for u in mids:
        for v in mids:
            assert ctx.add(u, v) in mids
            assert ctx.mul(u, v) in mids


def test_mid_coords_roundtrip():
    ctx = field_new(2, 2, 2)
    alpha = ctx.p
    for y in ctx.elements():
        coords = ctx.mid_coords(y)
        acc = 0
        for i, u in enumerate(coords):
            acc = ctx.add(acc, ctx.mul(u, ctx.pow(alpha, i)))
        assert acc == y


def test_prime_subfield_is_low_indices():
    ctx = field_new(5, 1, 2)
    for k in range(5):
        assert ctx.add(k, 1 if k < 4 else 1) < 5  # closed under +1
        assert ctx.mul(k, 1) == k


# ---------------------------------------------------------------------------
# character sums: orthogonality, Gauss, Weil
# ---------------------------------------------------------------------------

def _orthogonality(ctx, a):
    counts = [0] * ctx.p
    for x in ctx.elements():
        counts[ctx.trace(ctx.mul(a, x), PRIME)] += 1
    return CycInt.from_counts(ctx.p, counts)


@pytest.mark.parametrize("p,r", [(2, 3), (3, 2), (5, 1), (7, 1)])
def test_additive_character_orthogonality(p, r):
    ctx = field_new(p, 1, r)
    q = ctx.order
    assert _orthogonality(ctx, 0) == CycInt.integer(p, q)
    for a in ctx.units():
        assert _orthogonality(ctx, a).is_zero()


def _gauss_sum(ctx, b=1):
    pos = [0] * ctx.p
    neg = [0] * ctx.p
    for x in ctx.units():
        e = ctx.trace(ctx.mul(b, x), PRIME)
        (pos if ctx.quad_char(x) > 0 else neg)[e] += 1
    return CycInt.from_counts(ctx.p, pos) - CycInt.from_counts(ctx.p, neg)


@pytest.mark.parametrize("p,r", [(3, 1), (5, 1), (7, 1), (3, 2)])
def test_quadratic_gauss_sum_magnitude(p, r):
    ctx = field_new(p, 1, r)
    G = _gauss_sum(ctx)
    assert G.norm2() == CycInt.integer(p, ctx.order)


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (3, 1), (5, 1), (7, 1), (3, 2)])
def test_weil_quadratic_sum_branches(p, r):
    """Both branches of the quadratic Weil sum evaluation, exhaustively."""
    ctx = field_new(p, 1, r)
    q = ctx.order
    for b in ctx.units():
        for a2 in ctx.units():
            for a1 in ctx.elements():
                for a0 in ctx.elements():
                    counts = [0] * p
                    for c in ctx.elements():
                        v = ctx.add(ctx.add(ctx.mul(a2, ctx.mul(c, c)),
                                            ctx.mul(a1, c)), a0)
                        counts[ctx.trace(ctx.mul(b, v), PRIME)] += 1
                    lhs = CycInt.from_counts(p, counts)
                    if p == 2:
                        if a2 == ctx.mul(b, ctx.mul(a1, a1)):
                            sign = 1 - 2 * ctx.trace(ctx.mul(b, a0), PRIME)
                            rhs = CycInt.integer(2, sign * q)
                        else:
                            rhs = CycInt.zero(2)
                    else:
                        four = ctx.embed_int(4)
                        arg = ctx.sub(a0, ctx.div(ctx.mul(a1, a1),
                                                  ctx.mul(four, a2)))
                        chi = CycInt.root(p, ctx.trace(ctx.mul(b, arg), PRIME))
                        rhs = chi * _gauss_sum(ctx, b) * ctx.quad_char(a2)
                    assert lhs == rhs


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def test_descriptor_roundtrip():
    ctx = field_new(2, 2, 3)
    desc = json.loads(json.dumps(ctx.descriptor()))
    again = field_new(desc["p"], desc["r"], desc["m"])
    assert again.modulus == tuple(desc["modulus"])
    assert again.primitive == desc["primitive"]


def test_is_prime():
    assert [n for n in range(2, 30) if is_prime(n)] == \
        [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
