"""Exact Walsh transforms and spectrum classification.

All Walsh coefficients are exact elements of Z[zeta_p].  For p = 2 they are
ordinary integers and whole spectra are computed with the O(n 2^n) butterfly;
for odd p values are accumulated as exponent counts and converted to CycInt
once per coefficient.  Classification (bent / s-plateaued / almost bent)
compares squared magnitudes by exact integer equality: the spectra are
algebraic integers and floating point would manufacture false classes.

Signature convention: the vectorial transform takes the output mask first,
W(v, lambda), everywhere in this package.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional, Sequence

from .cyclo import CycInt
from .functions import FnSpec
from .galois import MID, PRIME, FieldCtx


def fast_wht(vals: Sequence[int]) -> list:
    """In-place-style Hadamard butterfly on a copy; length must be 2^n."""
    n = len(vals)
    if n & (n - 1) or n == 0:
        raise ValueError(f"length {n} is not a power of two")
    out = list(vals)
    h = 1
    while h < n:
        for i in range(0, n, 2 * h):
            for j in range(i, i + h):
                a, b = out[j], out[j + h]
                out[j] = a + b
                out[j + h] = a - b
        h *= 2
    return out


@functools.lru_cache(maxsize=None)
def _mask_table(ctx: FieldCtx) -> tuple:
    """For p=2: mask[lam] with Tr(lam*x) = mask[lam] . x on index bits."""
    assert ctx.p == 2
    n = ctx.n
    masks = []
    for lam in ctx.elements():
        mask = 0
        for i in range(n):
            if ctx.trace(ctx.mul(lam, 1 << i), PRIME):
                mask |= 1 << i
        masks.append(mask)
    return tuple(masks)


def _scalar_exponent(f: FnSpec, x: int) -> int:
    return f.dom.mid_tr_prime(f.table[x])


def _component_exponent(F: FnSpec, v: int, x: int) -> int:
    cod = F.cod
    return cod.trace(cod.mul(v, F.table[x]), PRIME)


def _output_exponents(F: FnSpec, v: Optional[int]) -> list:
    if F.kind == "scalar":
        return [_scalar_exponent(F, x) for x in range(F.dom.order)]
    return [_component_exponent(F, v, x) for x in range(F.dom.order)]


def _walsh_table_p2(F: FnSpec, v: Optional[int]) -> list:
    """All W(v, lam) as ints, indexed by lam, via one butterfly."""
    dom = F.dom
    exps = _output_exponents(F, v)
    signs = [1 - 2 * e for e in exps]
    butter = fast_wht(signs)
    masks = _mask_table(dom)
    return [butter[masks[lam]] for lam in dom.elements()]


def _walsh_counts(F: FnSpec, v: Optional[int], lam: int) -> list:
    dom = F.dom
    p = dom.p
    exps = _output_exponents(F, v)
    counts = [0] * p
    tr = dom._tr_prime
    mul = dom.mul
    for x in dom.elements():
        counts[(exps[x] - tr[mul(lam, x)]) % p] += 1
    return counts


def walsh_scalar(f: FnSpec, lam: int) -> CycInt:
    """W_f(lambda) = sum_x zeta_p^(Tr_{q/p}(f(x)) - Tr_{q^n/p}(lambda x))."""
    if f.kind != "scalar":
        raise ValueError("walsh_scalar needs a scalar function")
    if f.dom.p == 2:
        return CycInt.integer(2, _walsh_table_p2(f, None)[lam])
    return CycInt.from_counts(f.dom.p, _walsh_counts(f, None, lam))


def walsh_vectorial(F: FnSpec, v: int, lam: int) -> CycInt:
    """Component Walsh coefficient W_F(v, lambda); v = 0 gives the
    degenerate orthogonality sum."""
    if F.kind != "vectorial":
        raise ValueError("walsh_vectorial needs a vectorial function")
    if F.dom.p == 2:
        return CycInt.integer(2, _walsh_table_p2(F, v)[lam])
    return CycInt.from_counts(F.dom.p, _walsh_counts(F, v, lam))


def walsh_table(F: FnSpec, v: Optional[int] = None) -> list:
    """One component's coefficients for every lambda (CycInt list; for p=2
    the CycInts are plain integers wrapped once at the end)."""
    dom = F.dom
    if dom.p == 2:
        return [CycInt.integer(2, w) for w in _walsh_table_p2(F, v)]
    return [CycInt.from_counts(dom.p, _walsh_counts(F, v, lam))
            for lam in dom.elements()]


# ---------------------------------------------------------------------------
# Full spectra and classification
# ---------------------------------------------------------------------------

BENT = "bent"
PLATEAUED = "plateaued"
ALMOST_BENT = "almost_bent"
UNCLASSIFIED = "unclassified"


@dataclass
class WalshSpectrum:
    """Squared-magnitude census of a function's Walsh coefficients.

    hist counts |W|^2 values over all classified (v, lambda) pairs (v over
    nonzero output masks for vectorial functions, the single implicit
    component for scalar ones).  component_s records the per-component
    plateau parameter, or None where a component is not two-valued; the
    overall amplitude_class is only Plateaued(s) when every component agrees
    on one s.
    """

    kind: str
    base: int           # q in |W|^2 in {0, q^(n+s)}
    n: int              # extension degree of the domain over GF(q)
    hist: dict
    component_s: dict
    amplitude_class: str
    s: Optional[int]
    support_count: int
    values: Optional[dict] = None

    def parseval_ok(self) -> bool:
        total = sum(w2 * cnt for w2, cnt in self.hist.items())
        ncomp = max(1, len(self.component_s))
        return total == ncomp * self.base ** (2 * self.n)


def _sq_int(c: CycInt) -> Optional[int]:
    m2 = c.norm2()
    return m2.as_int() if m2.is_rational() else None


def _component_sq_values(F: FnSpec, v: Optional[int]) -> list:
    if F.dom.p == 2:
        return [w * w for w in _walsh_table_p2(F, v)]
    return [_sq_int(CycInt.from_counts(F.dom.p, _walsh_counts(F, v, lam)))
            for lam in F.dom.elements()]


def _plateau_s(sqs: list, base: int, n: int) -> Optional[int]:
    """s with values in {0, base^(n+s)}, 0 for bent (no zeros), else None."""
    vals = set(sqs)
    if None in vals:
        return None
    nonzero = sorted(vals - {0})
    if len(nonzero) != 1:
        return None
    a = nonzero[0]
    target = base**n
    s = 0
    while target < a:
        target *= base
        s += 1
    if target != a:
        return None
    if 0 in vals and s == 0:
        return None  # a bent spectrum has no zeros
    return s


def spectrum_full(F: FnSpec, keep_values: bool = False) -> WalshSpectrum:
    """Transform every component and classify the amplitude profile."""
    dom = F.dom
    if F.kind == "scalar":
        base, n = dom.q, dom.m
        comps = [None]
    else:
        base, n = dom.q, dom.m
        comps = list(range(1, F.cod.order))

    hist: dict = {}
    component_s: dict = {}
    support = 0
    values = {} if keep_values else None
    ab_signs_ok = True
    ab_amp = None

    for v in comps:
        sqs = _component_sq_values(F, v)
        s_v = _plateau_s(sqs, base, n)
        component_s[v if v is not None else 0] = s_v
        for lam, sq in enumerate(sqs):
            key = sq if sq is not None else -1
            hist[key] = hist.get(key, 0) + 1
            if sq != 0:
                support += 1
        if keep_values:
            tbl = walsh_table(F, v)
            for lam, w in enumerate(tbl):
                values[(v, lam) if v is not None else lam] = w

    svals = set(component_s.values())
    if len(svals) == 1 and None not in svals:
        s = svals.pop()
        if s == 0:
            cls = BENT
        else:
            cls = PLATEAUED
            if (F.kind == "vectorial" and F.cod.order == dom.order
                    and n % 2 == 1 and s == 1):
                # almost bent also demands real coefficients +-q^((n+1)/2)
                if dom.p == 2 or _all_real_pm(F, base ** ((n + 1) // 2)):
                    cls = ALMOST_BENT
    else:
        s = None
        cls = UNCLASSIFIED
    return WalshSpectrum(F.kind, base, n, hist, component_s, cls, s,
                         support, values)


def _all_real_pm(F: FnSpec, amp: int) -> bool:
    allowed = {CycInt.zero(F.dom.p), CycInt.integer(F.dom.p, amp),
               CycInt.integer(F.dom.p, -amp)}
    for v in range(1, F.cod.order):
        for w in walsh_table(F, v):
            if w not in allowed:
                return False
    return True


def spectrum_hist(F: FnSpec) -> dict:
    """The CLI-facing histogram {|W|^2: count} aggregated over components."""
    return dict(sorted(spectrum_full(F).hist.items()))


def parseval_component(F: FnSpec, v: Optional[int] = None) -> bool:
    """Exact per-component Parseval: sum_lambda |W|^2 == q^(2n)."""
    dom = F.dom
    target = dom.q ** (2 * dom.m)
    if dom.p == 2:
        return sum(w * w for w in _walsh_table_p2(F, v)) == target
    acc = CycInt.zero(dom.p)
    for w in walsh_table(F, v):
        acc = acc + w.norm2()
    return acc == CycInt.integer(dom.p, target)


# ---------------------------------------------------------------------------
# Product-pairing transform for split-domain constructions (p = 2)
# ---------------------------------------------------------------------------

def product_walsh(H: FnSpec, dom_split: int, cod_split: int,
                  a: int, b: int, u: int, v: int) -> int:
    """W_H((a,b),(u,v)) over the product pairing of the bit-split domain and
    codomain: output masks (a,b) act through the split fields' absolute
    traces, likewise input masks (u,v)."""
    if H.dom.p != 2:
        raise ValueError("product pairing implemented for p = 2")
    from .galois import field_new

    dl = field_new(2, 1, dom_split)
    dh = field_new(2, 1, H.dom.n - dom_split)
    cl = field_new(2, 1, cod_split)
    ch = field_new(2, 1, H.codomain.n - cod_split)
    dmask = (1 << dom_split) - 1
    cmask = (1 << cod_split) - 1
    total = 0
    for z in H.dom.elements():
        x, y = z & dmask, z >> dom_split
        h = H.table[z]
        h1, h2 = h & cmask, h >> cod_split
        e = (cl.trace(cl.mul(a, h1), PRIME) ^ ch.trace(ch.mul(b, h2), PRIME)
             ^ dl.trace(dl.mul(u, x), PRIME) ^ dh.trace(dh.mul(v, y), PRIME))
        total += 1 - 2 * e
    return total
