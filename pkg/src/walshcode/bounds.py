"""Bound evaluation and optimality / minimality / self-orthogonality verdicts.

All bound arithmetic is exact big-integer arithmetic.  "Optimal" and
"almost optimal" follow one fixed convention: for each bound we compute the
largest d* (and, at fixed d, the largest k*) that still passes at the other
parameters fixed; a code is distance-optimal when d = d*, almost
distance-optimal when d = d* - 1, and likewise for dimensions.  Reports
carry d*/k* so any claim phrased against either bound can be checked
mechanically rather than asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from fractions import Fraction
from math import comb
from typing import Optional, Tuple

from .linearcode import BudgetError, LinearCode, WeightDistribution


@dataclass
class BoundVerdict:
    name: str
    holds: bool
    equality: bool
    d_star: int
    k_star: int
    distance_optimal: bool
    almost_distance_optimal: bool
    dimension_optimal: bool
    almost_dimension_optimal: bool

    def as_dict(self) -> dict:
        return asdict(self)


def _hamming_holds(n: int, k: int, d: int, q: int) -> Tuple[bool, bool]:
    radius = (d - 1) // 2
    lhs = q**k * sum(comb(n, i) * (q - 1) ** i for i in range(radius + 1))
    rhs = q**n
    return lhs <= rhs, lhs == rhs


def _griesmer_holds(n: int, k: int, d: int, q: int) -> Tuple[bool, bool]:
    need = sum(-(-d // q**i) for i in range(k))
    return n >= need, n == need


def _hamming_stars(n: int, k: int, d: int, q: int):
    """Largest passing d (at fixed k) and k (at fixed d), with the sphere
    volume maintained incrementally: one new binomial term per radius step
    instead of a fresh sum per candidate."""
    rhs = q**n
    cap = rhs // q**k  # volumes up to this keep the bound satisfied at k
    vol = 1
    term = 1
    radius = 0
    d_star = 0
    for dd in range(1, n + 1):
        r = (dd - 1) // 2
        while radius < r:
            term = term * (n - radius) * (q - 1) // (radius + 1)
            vol += term
            radius += 1
        if vol <= cap:
            d_star = dd
        else:
            break
    vol_d = sum(comb(n, i) * (q - 1) ** i for i in range((d - 1) // 2 + 1))
    quota = rhs // vol_d
    k_star = 0
    pw = q
    while pw <= quota and k_star < n:
        k_star += 1
        pw *= q
    return d_star, k_star


def _verdict(name: str, holds_fn, n: int, k: int, d: int, q: int) -> BoundVerdict:
    if not (1 <= k <= n and 1 <= d <= n):
        raise ValueError(f"invalid parameters [{n},{k},{d}]")
    holds, equal = holds_fn(n, k, d, q)
    if holds_fn is _hamming_holds:
        d_star, k_star = _hamming_stars(n, k, d, q)
    else:
        d_star = 0
        for dd in range(1, n + 1):
            if holds_fn(n, k, dd, q)[0]:
                d_star = dd
            else:
                break
        k_star = 0
        for kk in range(1, n + 1):
            if holds_fn(n, kk, d, q)[0]:
                k_star = kk
            else:
                break
    return BoundVerdict(
        name=name,
        holds=holds,
        equality=equal,
        d_star=d_star,
        k_star=k_star,
        distance_optimal=holds and d == d_star,
        almost_distance_optimal=holds and d == d_star - 1,
        dimension_optimal=holds and k == k_star,
        almost_dimension_optimal=holds and k == k_star - 1,
    )


def hamming_check(n: int, k: int, d: int, q: int) -> BoundVerdict:
    """Sphere-packing verdicts; equality means a perfect code."""
    return _verdict("hamming", _hamming_holds, n, k, d, q)


def griesmer_check(n: int, k: int, d: int, q: int) -> BoundVerdict:
    return _verdict("griesmer", _griesmer_holds, n, k, d, q)


def singleton_ok(n: int, k: int, d: int) -> bool:
    return d <= n - k + 1


def is_mds(n: int, k: int, d: int) -> bool:
    return d == n - k + 1


# ---------------------------------------------------------------------------
# Power-moment identities between a distribution and its dual's
# ---------------------------------------------------------------------------

def _power_moment_rhs(idx: int, n: int, k: int, q: int, B1: int, B2: int,
                      B3: int) -> Fraction:
    """Right-hand sides of the first four power moments, exact rationals.

    The first three are the classical printed forms; the cubic moment's
    B-free term is taken from the binomial-moment family
    sum_i C(n-i, v) A_i = q^(k-v) * sum_{j<=v} C(n-j, n-v) B_j (v = 0..3),
    which the other three also follow from.
    """
    if idx == 0:
        return Fraction(q**k)
    if idx == 1:
        return Fraction(q, 1) ** (k - 1) * (n * (q - 1) - B1)
    if idx == 2:
        inner = (
            n * (q - 1) * (n * (q - 1) + 1)
            - (2 * (n - 1) * (q - 1) + q) * B1
            + 2 * B2
        )
        return Fraction(q, 1) ** (k - 2) * inner
    if idx == 3:
        const = n * (
            n**2 * q**3
            - (3 * n**2 - 3 * n + 1) * q**2
            + 3 * (n - 1) ** 2 * q
            - (n - 1) * (n - 2)
        )
        coef_b1 = (
            -(3 * n**2 - 3 * n + 1) * q**2
            + 6 * (n - 1) ** 2 * q
            - 3 * (n - 1) * (n - 2)
        )
        coef_b2 = 6 * ((n - 1) * q - (n - 2))
        inner = const + coef_b1 * B1 + coef_b2 * B2 - 6 * B3
        return Fraction(q, 1) ** (k - 3) * inner
    raise ValueError(idx)


def pless_verify(A: WeightDistribution, B: WeightDistribution
                 ) -> Tuple[bool, Optional[int]]:
    """Check the first four power-moment identities exactly; returns
    (ok, index-of-first-violation)."""
    if B.n != A.n:
        raise ValueError("distributions have different lengths")
    return pless_verify_counts(A, B.counts.get(1, 0), B.counts.get(2, 0),
                               B.counts.get(3, 0))


def pless_verify_counts(A: WeightDistribution, B1: int, B2: int, B3: int
                        ) -> Tuple[bool, Optional[int]]:
    """The same identities against explicitly supplied low dual counts
    (useful when the dual distribution is only partially transformed)."""
    n, k, q = A.n, A.k, A.q
    for idx in range(4):
        lhs = Fraction(sum(c * w**idx for w, c in A.counts.items()))
        if lhs != _power_moment_rhs(idx, n, k, q, B1, B2, B3):
            return False, idx
    return True, None


# ---------------------------------------------------------------------------
# Minimality, divisibility, self-orthogonality
# ---------------------------------------------------------------------------

def minimality(wd: WeightDistribution, code: Optional[LinearCode] = None,
               budget: int = 2**14) -> Tuple[bool, Optional[bool]]:
    """(sufficient-ratio verdict, exact verdict when a code is supplied).

    The ratio test is w_min/w_max > (q-1)/q; the exact oracle decides
    support-minimality of every nonzero codeword by a pairwise inclusion
    scan.
    """
    d = wd.d()
    w_max = wd.w_max()
    if d is None:
        raise ValueError("minimality needs a nonzero code")
    ab = d * wd.q > w_max * (wd.q - 1)
    exact = None
    if code is not None:
        exact = _exact_minimal(code, budget)
    return ab, exact


def minimality_scan_feasible(code: LinearCode, budget: int = 2**14,
                             scan_cap: int = 2**31) -> bool:
    """The exact oracle costs O(q^(2k) * n) support comparisons; refuse
    scans whose total word-operation count would blow past the cap."""
    size = code.q_sym ** code.k
    return size <= budget and size * size * max(1, code.n // 32) <= scan_cap


def _exact_minimal(code: LinearCode, budget: int) -> bool:
    if not minimality_scan_feasible(code, budget):
        raise BudgetError("exact minimality scan over budget")
    ctx = code.ctx
    words = [w for w in code.codewords(budget) if any(w)]
    supports = []
    for w in words:
        supp = 0
        for j, x in enumerate(w):
            if x:
                supp |= 1 << j
        supports.append(supp)
    by_weight = sorted(range(len(words)), key=lambda i: supports[i].bit_count())
    for ii, i in enumerate(by_weight):
        si = supports[i]
        for j in by_weight[:ii]:
            sj = supports[j]
            if sj != si and (sj & si) == sj:
                # a strictly smaller support inside si: check scalarity
                if not _is_scalar_multiple(ctx, words[i], words[j]):
                    return False
    return True


def _is_scalar_multiple(ctx, a, b) -> bool:
    ratio = None
    for x, y in zip(a, b):
        if (x == 0) != (y == 0):
            return False
        if x:
            r = ctx.div(y, x)
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return True


def divisibility(wd: WeightDistribution, modulus: int) -> bool:
    """Every nonzero weight divisible by the modulus (vacuous for the zero
    code)."""
    return all(w % modulus == 0 for w, c in wd.counts.items() if c and w)


def self_orthogonal(C: LinearCode) -> bool:
    return C.gram_is_zero()


# ---------------------------------------------------------------------------
# Aggregated report
# ---------------------------------------------------------------------------

@dataclass
class BoundReport:
    singleton_ok: bool
    mds: bool
    hamming: BoundVerdict
    griesmer: BoundVerdict
    pless_checked: bool
    minimal_ab: bool
    minimal_exact: Optional[bool]
    doubly_even: bool
    self_orthogonal: bool

    def as_dict(self) -> dict:
        out = asdict(self)
        return out


def bound_report(C: LinearCode, wd: WeightDistribution,
                 dual_b123: Optional[Tuple[int, int, int]] = None,
                 exact_minimality_budget: int = 2**14) -> BoundReport:
    d = wd.d()
    if d is None:
        raise ValueError("bound report needs a nonzero code")
    n, k, q = wd.n, wd.k, wd.q
    ham = hamming_check(n, k, d, q)
    gri = griesmer_check(n, k, d, q)
    pless_ok = False
    if dual_b123 is not None:
        pless_ok = pless_verify_counts(wd, *dual_b123)[0]
    if minimality_scan_feasible(C, exact_minimality_budget):
        ab, exact = minimality(wd, C, exact_minimality_budget)
    else:
        ab, exact = minimality(wd, None)
    de = q == 2 and divisibility(wd, 4)
    so = self_orthogonal(C)
    if de and not so:
        raise RuntimeError("doubly-even binary code failed the Gram check")
    return BoundReport(
        singleton_ok=singleton_ok(n, k, d),
        mds=is_mds(n, k, d),
        hamming=ham,
        griesmer=gri,
        pless_checked=pless_ok,
        minimal_ab=ab,
        minimal_exact=exact,
        doubly_even=de,
        self_orthogonal=so,
    )
