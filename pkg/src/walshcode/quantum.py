"""CSS code assembly from classical pairs and transversal-gate conditions.

No quantum states are simulated: validity of a transversal T-gate (binary)
or a qudit phase gate R_k reduces to classical weight-divisibility and
power-moment conditions on the X-side code, and those are what this module
checks, exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .functions import FnSpec
from .galois import PRIME
from .linearcode import BudgetError, LinearCode
from .walsh import walsh_vectorial


@dataclass
class CssCode:
    cx: LinearCode
    cz: LinearCode
    n_phys: int
    k_logical: int
    d: Optional[int]       # None when there are no logical operators,
                           # or when only a bound is known
    d_is_bound: bool


class CssError(ValueError):
    """The pair violates the containment condition or basic shape checks."""


def css_build(cx: LinearCode, cz: LinearCode,
              budget: int = 2**20) -> CssCode:
    """Validate dual(C_Z) <= C_X and assemble the CSS parameters.

    The distance is the least weight over (C_X minus dual(C_Z)) union
    (C_Z minus dual(C_X)); when either side exceeds the enumeration budget
    the report downgrades to a certified lower bound (min of the two
    classical distances), flagged as a bound.
    """
    if cx.n != cz.n:
        raise CssError(f"length mismatch: {cx.n} != {cz.n}")
    if cx.ctx.p != cz.ctx.p or cx.level != PRIME or cz.level != PRIME:
        raise CssError("CSS codes take prime-field classical codes")
    cz_dual = cz.dual()
    if not cz_dual.is_subcode(cx):
        raise CssError("dual(C_Z) is not contained in C_X")
    n = cx.n
    k = cx.k + cz.k - n
    d: Optional[int] = None
    d_is_bound = False
    if k == 0:
        # dual(C_Z) = C_X and dual(C_X) = C_Z: both difference sets are
        # empty, there are no logical operators and no distance to take.
        return CssCode(cx, cz, n, 0, None, False)
    cx_dual = cx.dual()
    try:
        best = None
        found_any = False
        for code, excluded in ((cx, cz_dual), (cz, cx_dual)):
            for word in code.codewords(budget):
                if not any(word):
                    continue
                if excluded.contains(word):
                    continue
                found_any = True
                w = sum(1 for x in word if x)
                if best is None or w < best:
                    best = w
        d = best if found_any else None
    except BudgetError:
        d_is_bound = True
        try:
            d = min(cx.min_distance(budget), cz.min_distance(budget))
        except BudgetError:
            d = None
    return CssCode(cx, cz, n, k, d, d_is_bound)


def css_t_check(cx: LinearCode, budget: int = 2**20) -> bool:
    """Binary transversal-T certificate: every codeword weight is divisible
    by four."""
    if cx.ctx.p != 2:
        raise CssError("the T-gate divisibility check is binary")
    wd = cx.weight_distribution(budget)
    return all(w % 4 == 0 for w, c in wd.counts.items() if c)


def phase_moment_check(cx: LinearCode, k_exp: int, p: int,
                       budget: int = 2**20) -> bool:
    """True iff sum_i c_i^k == 0 mod p for every codeword, with coordinates
    lifted to the integer representatives 0..p-1.

    k must divide p - 1; the binary T-gate case k = 2 is also accepted,
    where the condition degenerates to even weight.
    """
    if cx.ctx.p != p or cx.level != PRIME:
        raise CssError("phase check needs a prime-field code over GF(p)")
    if p == 2:
        if k_exp not in (1, 2):
            raise CssError("for p = 2 only k in {1, 2} is meaningful")
    elif (p - 1) % k_exp:
        raise CssError(f"k = {k_exp} does not divide p - 1 = {p - 1}")
    powers = [pow(i, k_exp, p) for i in range(p)]
    for word in cx.codewords(budget):
        if sum(powers[x] for x in word) % p:
            return False
    return True


def component_weight(F: FnSpec, a: int) -> int:
    """Weight of the component codeword (Tr(a F(x)))_x from the Walsh value
    at input mask zero: 2^(n-1) - W_F(a, 0) / 2."""
    if F.dom.p != 2:
        raise ValueError("the component-weight formula is binary")
    if a == 0:
        raise ValueError("a = 0 indexes the zero codeword (weight 0); "
                         "the formula is degenerate there")
    w = walsh_vectorial(F, a, 0).as_int()
    n = F.dom.n
    value, rem = divmod((1 << n) - w, 2)
    if rem:
        raise RuntimeError("odd character sum in the weight formula")
    return value
