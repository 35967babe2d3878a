"""Code builders and closed-form weight predictors.

Two families are built here, both parameterized by functions over a tower
GF(p) <= GF(q) <= GF(q^m):

* the scalar triple construction: a 4-row code over GF(q^m) whose columns
  are indexed by the solutions of f(x) + g(y) + h(z) = 0, together with its
  GF(q) subfield code, punctured versions, and the character-sum machinery
  (the Phi and Lambda sums) that predicts every codeword weight;

* the vectorial pair construction: the 3-row analogue for self-maps of
  GF(q^m) with defining equation f(x) + g(y) = 0, whose binary subfield
  codes are four-weight when h = f^(-1) o g is uniformly s-plateaued.

Predictors refuse (HypothesisError) whenever the closed-form tables'
hypotheses fail -- non-normalized h, non-invertible f, or a spectrum that is
not single-amplitude -- and the brute-force enumeration path remains
available for any input.  Predicted dimensions are always re-verified as
matrix rank by the callers that build reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .cyclo import CycInt
from .functions import FnSpec, fn_compose, fn_invert, fn_trace, fn_trace_square
from .galois import FieldCtx, MID, PRIME, TOP
from .linearcode import BudgetError, LinearCode, WeightDistribution
from .walsh import fast_wht, spectrum_full, walsh_table, _mask_table

DEFAULT_TUPLE_BUDGET = 2**24


class HypothesisError(RuntimeError):
    """A closed-form predictor's hypotheses do not hold for the input."""


# ---------------------------------------------------------------------------
# Defining sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DefiningSet:
    """Ordered solution tuples of the defining equation (lexicographic in
    element indices, which fixes the codeword coordinate order)."""

    tuples: tuple

    @property
    def size(self) -> int:
        return len(self.tuples)


def defining_set_scalar(f: FnSpec, g: FnSpec, h: FnSpec) -> DefiningSet:
    ctx = f.dom
    if g.dom is not ctx or h.dom is not ctx:
        raise ValueError("f, g, h must live on one tower")
    out = []
    add = ctx.add
    ft, gt, ht = f.table, g.table, h.table
    for x in ctx.elements():
        fx = ft[x]
        for y in ctx.elements():
            fg = add(fx, gt[y])
            for z in ctx.elements():
                if add(fg, ht[z]) == 0:
                    out.append((x, y, z))
    return DefiningSet(tuple(out))


def defining_set_vectorial(f: FnSpec, g: FnSpec) -> DefiningSet:
    ctx = f.dom
    if g.dom is not ctx:
        raise ValueError("f, g must live on one field")
    add = ctx.add
    out = [
        (x, y)
        for x in ctx.elements()
        for y in ctx.elements()
        if add(f.table[x], g.table[y]) == 0
    ]
    return DefiningSet(tuple(out))


# ---------------------------------------------------------------------------
# Character-sum tables
#
# S_f[omega][beta] = sum_x chi(omega * f(x)) chi'(beta * x)  (scalar f)
# T_f[omega][beta] = sum_x chi'(omega * f(x) + beta * x)     (vectorial f)
#
# chi / chi' are the canonical additive characters of GF(q) and GF(q^m).
# For p = 2 the tables hold plain ints (computed by one butterfly per
# omega); for odd p they hold CycInt values.
# ---------------------------------------------------------------------------

def _chi_exp_mid(ctx: FieldCtx, u: int) -> int:
    return ctx.mid_tr_prime(u)


def _chi_exp_top(ctx: FieldCtx, y: int) -> int:
    return ctx.trace(y, PRIME)


def _scalar_char_table(f: FnSpec) -> Dict[int, list]:
    ctx = f.dom
    p = ctx.p
    out: Dict[int, list] = {}
    omegas = [w for w in ctx.mid_elements() if w]
    if p == 2:
        masks = _mask_table(ctx)
        for w in omegas:
            signs = [1 - 2 * _chi_exp_mid(ctx, ctx.mul(w, f.table[x]))
                     for x in ctx.elements()]
            butter = fast_wht(signs)
            out[w] = [butter[masks[beta]] for beta in ctx.elements()]
        return out
    for w in omegas:
        row = []
        for beta in ctx.elements():
            counts = [0] * p
            for x in ctx.elements():
                e = (_chi_exp_mid(ctx, ctx.mul(w, f.table[x]))
                     + _chi_exp_top(ctx, ctx.mul(beta, x))) % p
                counts[e] += 1
            row.append(CycInt.from_counts(p, counts))
        out[w] = row
    return out


def _vectorial_char_table(f: FnSpec) -> Dict[int, list]:
    ctx = f.dom
    p = ctx.p
    out: Dict[int, list] = {}
    if p == 2:
        masks = _mask_table(ctx)
        for w in ctx.units():
            signs = [1 - 2 * _chi_exp_top(ctx, ctx.mul(w, f.table[x]))
                     for x in ctx.elements()]
            butter = fast_wht(signs)
            out[w] = [butter[masks[beta]] for beta in ctx.elements()]
        return out
    for w in ctx.units():
        row = []
        for beta in ctx.elements():
            counts = [0] * p
            for x in ctx.elements():
                e = (_chi_exp_top(ctx, ctx.add(ctx.mul(w, f.table[x]),
                                               ctx.mul(beta, x)))) % p
                counts[e] += 1
            row.append(CycInt.from_counts(p, counts))
        out[w] = row
    return out


def _as_cyc(p: int, v) -> CycInt:
    return v if isinstance(v, CycInt) else CycInt.integer(p, v)


# ---------------------------------------------------------------------------
# Scalar triple construction
# ---------------------------------------------------------------------------

class ScalarTriple:
    """The 4-dimensional construction for one (f, g, h) over a tower.

    Caches the defining set and the per-function character tables so that
    lengths, Lambda sums and whole predicted distributions share work.
    """

    def __init__(self, f: FnSpec, g: FnSpec, h: FnSpec):
        for fn in (f, g, h):
            if fn.kind != "scalar":
                raise ValueError("the triple construction takes scalar functions")
        if g.dom is not f.dom or h.dom is not f.dom:
            raise ValueError("f, g, h must live on one tower")
        self.f, self.g, self.h = f, g, h
        self.ctx = f.dom
        self._D: Optional[DefiningSet] = None
        self._tables = None

    @property
    def D(self) -> DefiningSet:
        if self._D is None:
            self._D = defining_set_scalar(self.f, self.g, self.h)
        return self._D

    def _char_tables(self):
        if self._tables is None:
            self._tables = (
                _scalar_char_table(self.f),
                _scalar_char_table(self.g),
                _scalar_char_table(self.h),
            )
        return self._tables

    # -- character sums ---------------------------------------------------

    def phi(self) -> CycInt:
        """The triple sum over nontrivial characters of GF(q); the code
        length is 1 + q^(3m-1) + phi/q."""
        ctx = self.ctx
        p = ctx.p
        Sf, Sg, Sh = self._char_tables()
        acc = CycInt.zero(p)
        for s in Sf:
            term = _as_cyc(p, Sf[s][0]) * _as_cyc(p, Sg[s][0]) * _as_cyc(p, Sh[s][0])
            acc = acc + term
        return acc

    def length(self) -> int:
        ctx = self.ctx
        phi = self.phi().as_int()
        n, rem = divmod(ctx.q ** (3 * ctx.m - 1) * ctx.q + phi, ctx.q)
        if rem:
            raise RuntimeError("phi sum is not divisible by q")
        return 1 + n

    def lam(self, a: int, b: int, c: int, d: int) -> CycInt:
        """The double character sum controlling the weight of the subfield
        codeword indexed by (a, b, c, d), evaluated through the exact
        factorization of its inner triple sum."""
        ctx = self.ctx
        p = ctx.p
        Sf, Sg, Sh = self._char_tables()
        acc = CycInt.zero(p)
        for s in Sf:
            chi_sa = CycInt.root(p, _chi_exp_mid(ctx, ctx.mul(s, a)))
            inner = CycInt.zero(p)
            sb, sc, sd = ctx.mul(s, b), ctx.mul(s, c), ctx.mul(s, d)
            for w in Sf:
                term = _as_cyc(p, Sf[w][sb]) * _as_cyc(p, Sg[w][sc]) \
                    * _as_cyc(p, Sh[w][sd])
                inner = inner + term
            acc = acc + chi_sa * inner
        return acc

    def lam_naive(self, a: int, b: int, c: int, d: int) -> CycInt:
        """Raw evaluation of the double sum with no factorization; the
        oracle for the fast path, usable at tiny sizes only."""
        ctx = self.ctx
        p = ctx.p
        counts = [0] * p
        f, g, h = self.f.table, self.g.table, self.h.table
        for s in ctx.mid_elements():
            if not s:
                continue
            sa = _chi_exp_mid(ctx, ctx.mul(s, a))
            sb, sc, sd = ctx.mul(s, b), ctx.mul(s, c), ctx.mul(s, d)
            for w in ctx.mid_elements():
                if not w:
                    continue
                for x in ctx.elements():
                    ex = _chi_exp_mid(ctx, ctx.mul(w, f[x])) \
                        + _chi_exp_top(ctx, ctx.mul(sb, x))
                    for y in ctx.elements():
                        ey = _chi_exp_mid(ctx, ctx.mul(w, g[y])) \
                            + _chi_exp_top(ctx, ctx.mul(sc, y))
                        for z in ctx.elements():
                            ez = _chi_exp_mid(ctx, ctx.mul(w, h[z])) \
                                + _chi_exp_top(ctx, ctx.mul(sd, z))
                            counts[(sa + ex + ey + ez) % p] += 1
        return CycInt.from_counts(p, counts)

    # -- codeword weights via the character sums ----------------------------

    def delta(self, b: int) -> int:
        return 1 if self.ctx.trace(b, MID) else 0

    def weight_formula(self, a: int, b: int, c: int, d: int) -> int:
        """Exact weight of the subfield codeword c_(a,b,c,d): the zero and
        all-ones rows are special, everything else goes through Lambda."""
        ctx = self.ctx
        q = ctx.q
        m = ctx.m
        if a == 0 and b == 0 and c == 0 and d == 0:
            return 0
        if b == 0 and c == 0 and d == 0:
            return self.D.size
        lam = self.lam(a, b, c, d).as_int()
        phi = self.phi().as_int()
        num = (q - 1) * phi - lam
        body, rem = divmod(num, q * q)
        if rem:
            raise RuntimeError("weight formula produced a non-integer")
        return self.delta(b) + q ** (3 * m - 2) * (q - 1) + body


def build_scalar_triple(f: FnSpec, g: FnSpec, h: FnSpec
                        ) -> Tuple[LinearCode, DefiningSet]:
    """The [#D + 1, <=4] code over GF(q^m) with the extra first column."""
    tri = ScalarTriple(f, g, h)
    D = tri.D
    ctx = tri.ctx
    ones = (1,) * D.size
    rows = [
        (0,) + ones,
        (1,) + tuple(x for x, _, _ in D.tuples),
        (0,) + tuple(y for _, y, _ in D.tuples),
        (0,) + tuple(z for _, _, z in D.tuples),
    ]
    return LinearCode(ctx, TOP, rows), D


def scalar_trace_codeword(tri: ScalarTriple, a: int, b: int, c: int, d: int) -> tuple:
    """One subfield codeword in its trace representation:
    (Tr(b), (a + Tr(bx + cy + dz)) over the defining set)."""
    ctx = tri.ctx
    head = ctx.trace(b, MID)
    body = tuple(
        ctx.add(a, ctx.trace(
            ctx.add(ctx.add(ctx.mul(b, x), ctx.mul(c, y)), ctx.mul(d, z)), MID))
        for (x, y, z) in tri.D.tuples
    )
    return (head,) + body


def scalar_subfield_distribution(tri: ScalarTriple, workers: int = 1,
                                 punctured: bool = False) -> WeightDistribution:
    """Brute-force weight distribution of the subfield code by enumerating
    every trace-representation codeword (a, b, c, d)."""
    ctx = tri.ctx
    if ctx.p == 2 and ctx.r == 1:
        counts = _scalar_enum_binary(tri, workers, punctured)
    else:
        counts = _scalar_enum_generic(tri, punctured)
    n = tri.D.size + (0 if punctured else 1)
    k = _dim_from_size(sum(counts.values()), ctx.q)
    return WeightDistribution(counts, n, k, ctx.q)


def _dim_from_size(total: int, q: int) -> int:
    k = 0
    t = total
    while t > 1:
        t //= q
        k += 1
    return k


def _scalar_enum_binary(tri: ScalarTriple, workers: int, punctured: bool) -> dict:
    ctx = tri.ctx
    m = ctx.m
    D = tri.D.tuples
    nD = len(D)
    xs = [t[0] for t in D]
    ys = [t[1] for t in D]
    zs = [t[2] for t in D]
    trp = ctx._tr_prime
    mul = ctx.mul

    def comp_masks(coords):
        masks = []
        for b in ctx.elements():
            acc = 0
            for j, x in enumerate(coords):
                if trp[mul(b, x)]:
                    acc |= 1 << j
            masks.append(acc)
        return masks

    Xb = comp_masks(xs)
    Yc = comp_masks(ys)
    Zd = comp_masks(zs)
    deltas = [trp[b] for b in ctx.elements()]
    payload = (Xb, Yc, Zd, deltas, nD, 1 << m, punctured)
    total = 1 << (3 * m)
    chunks = _split_range(total, workers)
    results = _run_chunks(_scalar_chunk_worker, payload, chunks, workers)
    counts: dict = {}
    for part in results:
        for w, cnt in part.items():
            counts[w] = counts.get(w, 0) + cnt
    return counts


def _scalar_chunk_worker(payload, lo, hi):
    Xb, Yc, Zd, deltas, nD, size, punctured = payload
    ones = (1 << nD) - 1
    counts: dict = {}
    for idx in range(lo, hi):
        d, rest = idx % size, idx // size
        c, b = rest % size, rest // size
        body = Xb[b] ^ Yc[c] ^ Zd[d]
        w0 = body.bit_count()
        dl = 0 if punctured else deltas[b]
        for w in (dl + w0, dl + ((ones ^ body).bit_count())):
            counts[w] = counts.get(w, 0) + 1
    return counts


def _scalar_enum_generic(tri: ScalarTriple, punctured: bool) -> dict:
    ctx = tri.ctx
    counts: dict = {}
    mids = ctx.mid_elements()
    for b in ctx.elements():
        head = 0 if punctured else tri.delta(b)
        for c in ctx.elements():
            for d in ctx.elements():
                base = [
                    ctx.trace(ctx.add(ctx.add(ctx.mul(b, x), ctx.mul(c, y)),
                                      ctx.mul(d, z)), MID)
                    for (x, y, z) in tri.D.tuples
                ]
                from collections import Counter

                val_counts = Counter(base)
                for a in mids:
                    # weight = positions where a + value != 0
                    zero_hits = val_counts.get(ctx.neg(a), 0)
                    w = head + len(base) - zero_hits
                    counts[w] = counts.get(w, 0) + 1
    return counts


# ---------------------------------------------------------------------------
# Closed-form Lambda evaluations for the (tr, tr_square, .) instantiations
# ---------------------------------------------------------------------------

def _require_tr_pair(tri: ScalarTriple) -> None:
    ctx = tri.ctx
    if tri.f.table != fn_trace(ctx).table or tri.g.table != fn_trace_square(ctx).table:
        raise HypothesisError(
            "closed forms need f = trace and g = trace-of-square"
        )


def lambda_closed_binary(tri: ScalarTriple, a: int, b: int, c: int, d: int) -> CycInt:
    """q = 2, f = tr, g = tr_square, h arbitrary: nonzero only at b = c = 1,
    where the sum collapses to (-1)^a * 2^(2m) * W_h(d)."""
    ctx = tri.ctx
    if ctx.q != 2:
        raise HypothesisError("binary closed form needs q = 2")
    _require_tr_pair(tri)
    if b != 1 or c != 1:
        return CycInt.zero(2)
    wh = walsh_table(tri.h)[d].as_int()
    sign = -1 if a else 1
    return CycInt.integer(2, sign * (1 << (2 * ctx.m)) * wh)


def lambda_closed_even_q(tri: ScalarTriple, a: int, b: int, c: int, d: int) -> CycInt:
    """q even, (tr, tr_square, norm): zero unless both b and c are units of
    GF(q), else q^(2m) times a norm character sum."""
    ctx = tri.ctx
    p = ctx.p
    if p != 2:
        raise HypothesisError("even-q closed form needs characteristic 2")
    _require_tr_pair(tri)
    mid_units = set(u for u in ctx.mid_elements() if u)
    if b not in mid_units or c not in mid_units:
        return CycInt.zero(p)
    s = ctx.div(b, ctx.mul(c, c))
    counts = [0] * p
    for z in ctx.elements():
        arg = ctx.add(a, ctx.sub(ctx.trace(ctx.mul(d, z), MID),
                                 ctx.mul(b, ctx.norm(z, MID))))
        counts[_chi_exp_mid(ctx, ctx.mul(s, arg))] += 1
    return CycInt.from_counts(p, counts) * (ctx.q ** (2 * ctx.m))


def lambda_closed_odd_q(tri: ScalarTriple, a: int, b: int, c: int, d: int) -> CycInt:
    """q odd and m even, (tr, tr_square, norm): the quadratic Weil sum peels
    off a Gauss-sum factor of GF(q^m); zero whenever b is not a unit of
    GF(q) (the x-sum vanishes there)."""
    ctx = tri.ctx
    p = ctx.p
    if p == 2 or ctx.m % 2:
        raise HypothesisError("odd-q closed form needs q odd and m even")
    _require_tr_pair(tri)
    mid_units = set(u for u in ctx.mid_elements() if u)
    if b not in mid_units:
        return CycInt.zero(p)
    gauss = _gauss_sum_top(ctx)
    four_b = ctx.mul(ctx.embed_int(4), b)
    shift = ctx.trace(ctx.div(ctx.mul(c, c), four_b), MID)
    counts = [0] * p
    for s in ctx.mid_elements():
        if not s:
            continue
        for z in ctx.elements():
            arg = ctx.add(ctx.add(a, shift),
                          ctx.sub(ctx.trace(ctx.mul(d, z), MID),
                                  ctx.mul(b, ctx.norm(z, MID))))
            counts[_chi_exp_mid(ctx, ctx.mul(s, arg))] += 1
    return gauss * CycInt.from_counts(p, counts) * (ctx.q ** ctx.m)


def _gauss_sum_top(ctx: FieldCtx) -> CycInt:
    """Quadratic Gauss sum of the top field, exact in Z[zeta_p]."""
    p = ctx.p
    counts_pos = [0] * p
    counts_neg = [0] * p
    for x in ctx.units():
        e = ctx.trace(x, PRIME)
        if ctx.quad_char(x) > 0:
            counts_pos[e] += 1
        else:
            counts_neg[e] += 1
    return CycInt.from_counts(p, counts_pos) - CycInt.from_counts(p, counts_neg)


# ---------------------------------------------------------------------------
# Predicted distributions (closed-form tables)
# ---------------------------------------------------------------------------

@dataclass
class PredictedDistribution:
    """(weight, multiplicity, provenance-label) rows plus predicted [n, k]."""

    rows: tuple
    n: int
    k: int
    q: int
    theorem: str

    def counts(self) -> dict:
        out: dict = {}
        for w, mult, _ in self.rows:
            if mult:
                out[w] = out.get(w, 0) + mult
        return out

    def as_distribution(self) -> WeightDistribution:
        return WeightDistribution(self.counts(), self.n, self.k, self.q)

    def check_internal(self) -> None:
        total = sum(mult for _, mult, _ in self.rows)
        if total != self.q**self.k:
            raise RuntimeError("predicted multiplicities do not sum to q^k")
        for w, mult, _ in self.rows:
            if mult and not (0 <= w <= self.n):
                raise RuntimeError("predicted weight outside [0, n]")


def _classify_scalar_h(h: FnSpec) -> Tuple[int, int]:
    """(m, s) for a normalized scalar h over a strictly binary tower, with
    s = 0 meaning bent; refuses anything without a single amplitude."""
    ctx = h.dom
    if ctx.p != 2 or ctx.r != 1:
        raise HypothesisError("closed-form tables are proved for q = 2 only")
    if not h.is_normalized():
        raise HypothesisError("h must be normalized (h(0) = 0)")
    spec = spectrum_full(h)
    if spec.s is None:
        raise HypothesisError("h has no single Walsh amplitude")
    m, s = ctx.m, spec.s
    if s == 0 and m % 2:
        raise HypothesisError("bent h cannot exist for odd m")
    if s > 0 and (m - s) % 2:
        raise HypothesisError(f"inconsistent plateau parity (m={m}, s={s})")
    return m, s


def weights_scalar_predicted(f: FnSpec, g: FnSpec, h: FnSpec,
                             punctured: bool = False,
                             generic: bool = False) -> PredictedDistribution:
    """Predicted table for the subfield code of the triple construction.

    The fast path requires q = 2, f = tr, g = tr_square and h normalized
    with a single amplitude (bent or s-plateaued); anything else falls back
    to the per-codeword character-sum evaluation when generic=True, and
    refuses otherwise.
    """
    tri = ScalarTriple(f, g, h)
    if generic:
        return _scalar_predicted_generic(tri, punctured)
    _require_tr_pair(tri)
    m, s = _classify_scalar_h(h)
    k = 3 * m + 1
    mid = 1 << (3 * m - 2)
    spread = 1 << ((5 * m + s - 4) // 2)
    lo, hi = mid - spread, mid + spread
    extreme_mult = 1 << (m - s)
    if punctured:
        n = 1 << (3 * m - 1)
        rows = (
            (0, 1, "zero"),
            (lo, extreme_mult, "spectrum+"),
            (mid, 2 ** (3 * m + 1) - 2 ** (m - s + 1) - 2, "balanced"),
            (hi, extreme_mult, "spectrum-"),
            (n, 1, "complement"),
        )
        label = "plateaued-punctured"
    else:
        n = (1 << (3 * m - 1)) + 1
        if m % 2 == 0:
            rows = (
                (0, 1, "zero"),
                (lo, extreme_mult, "spectrum+"),
                (mid, 2 ** (3 * m) - 2 ** (m - s + 1) - 2, "balanced"),
                (mid + 1, 2 ** (3 * m), "balanced+delta"),
                (hi, extreme_mult, "spectrum-"),
                (n - 1, 1, "complement"),
            )
            label = "bent-case" if s == 0 else "plateaued-even-m"
        else:
            rows = (
                (0, 1, "zero"),
                (lo + 1, extreme_mult, "spectrum+delta"),
                (mid, 2 ** (3 * m) - 2, "balanced"),
                (mid + 1, 2 ** (3 * m) - 2 ** (m - s + 1), "balanced+delta"),
                (hi + 1, extreme_mult, "spectrum-delta"),
                (n - 1, 1, "complement"),
            )
            label = "plateaued-odd-m"
    pred = PredictedDistribution(rows, n, k, 2, label)
    pred.check_internal()
    return pred


def _scalar_predicted_generic(tri: ScalarTriple,
                              punctured: bool) -> PredictedDistribution:
    """Exact per-codeword weights through the character-sum formula; an
    independent route from direct Hamming counting."""
    ctx = tri.ctx
    q = ctx.q
    total_tuples = q * ctx.order**3
    if total_tuples > DEFAULT_TUPLE_BUDGET:
        raise BudgetError("tuple space too large for the generic predictor")
    counts: dict = {}
    for a in ctx.mid_elements():
        for b in ctx.elements():
            for c in ctx.elements():
                for d in ctx.elements():
                    w = tri.weight_formula(a, b, c, d)
                    if punctured:
                        w -= tri.delta(b)
                    counts[w] = counts.get(w, 0) + 1
    n = tri.D.size + (0 if punctured else 1)
    k = _dim_from_size(sum(counts.values()), q)
    rows = tuple((w, cnt, "char-sum") for w, cnt in sorted(counts.items()))
    return PredictedDistribution(rows, n, k, q, "generic-char-sum")


# ---------------------------------------------------------------------------
# Vectorial pair construction
# ---------------------------------------------------------------------------

class VectorialPair:
    """The 3-dimensional construction for self-maps f, g of GF(q^m)."""

    def __init__(self, f: FnSpec, g: FnSpec):
        for fn in (f, g):
            if fn.kind != "vectorial":
                raise ValueError("the pair construction takes vectorial functions")
        if f.dom is not g.dom or f.cod is not f.dom or g.cod is not g.dom:
            raise ValueError("f, g must be self-maps of one field")
        self.f, self.g = f, g
        self.ctx = f.dom
        self._D: Optional[DefiningSet] = None
        self._tables = None

    @property
    def D(self) -> DefiningSet:
        if self._D is None:
            self._D = defining_set_vectorial(self.f, self.g)
        return self._D

    def _char_tables(self):
        if self._tables is None:
            self._tables = (
                _vectorial_char_table(self.f),
                _vectorial_char_table(self.g),
            )
        return self._tables

    def phi_bar(self) -> CycInt:
        """Vanishes whenever f or g is a permutation (orthogonality)."""
        ctx = self.ctx
        p = ctx.p
        Tf, Tg = self._char_tables()
        acc = CycInt.zero(p)
        for s in ctx.units():
            acc = acc + _as_cyc(p, Tf[s][0]) * _as_cyc(p, Tg[s][0])
        return acc

    def length(self) -> int:
        phi = self.phi_bar().as_int()
        qm = self.ctx.order
        n, rem = divmod(qm * qm + phi, qm)
        if rem:
            raise RuntimeError("phi sum not divisible by q^m")
        return 1 + n

    def lam_bar(self, a: int, b: int, c: int) -> CycInt:
        ctx = self.ctx
        p = ctx.p
        Tf, Tg = self._char_tables()
        acc = CycInt.zero(p)
        for s in ctx.mid_elements():
            if not s:
                continue
            chi_sa = CycInt.root(p, _chi_exp_mid(ctx, ctx.mul(s, a)))
            sb, sc = ctx.mul(s, b), ctx.mul(s, c)
            inner = CycInt.zero(p)
            for w in ctx.units():
                inner = inner + _as_cyc(p, Tf[w][sb]) * _as_cyc(p, Tg[w][sc])
            acc = acc + chi_sa * inner
        return acc

    def lam_bar_naive(self, a: int, b: int, c: int) -> CycInt:
        ctx = self.ctx
        p = ctx.p
        counts = [0] * p
        for s in ctx.mid_elements():
            if not s:
                continue
            sa = _chi_exp_mid(ctx, ctx.mul(s, a))
            sb, sc = ctx.mul(s, b), ctx.mul(s, c)
            for w in ctx.units():
                for x in ctx.elements():
                    ex = _chi_exp_top(ctx, ctx.add(ctx.mul(w, self.f.table[x]),
                                                   ctx.mul(sb, x)))
                    for y in ctx.elements():
                        ey = _chi_exp_top(ctx, ctx.add(ctx.mul(w, self.g.table[y]),
                                                       ctx.mul(sc, y)))
                        counts[(sa + ex + ey) % p] += 1
        return CycInt.from_counts(p, counts)

    def delta(self, b: int) -> int:
        return 1 if self.ctx.trace(b, MID) else 0

    def weight_formula(self, a: int, b: int, c: int) -> int:
        ctx = self.ctx
        q = ctx.q
        if a == 0 and b == 0 and c == 0:
            return 0
        if b == 0 and c == 0:
            return self.D.size
        lam = self.lam_bar(a, b, c).as_int()
        phi = self.phi_bar().as_int()
        num = (q - 1) * phi - lam
        body, rem = divmod(num, q * ctx.order)
        if rem:
            raise RuntimeError("weight formula produced a non-integer")
        return self.delta(b) + q ** (ctx.m - 1) * (q - 1) + body


def build_vectorial_pair(f: FnSpec, g: FnSpec) -> Tuple[LinearCode, DefiningSet]:
    pair = VectorialPair(f, g)
    D = pair.D
    rows = [
        (0,) + (1,) * D.size,
        (1,) + tuple(x for x, _ in D.tuples),
        (0,) + tuple(y for _, y in D.tuples),
    ]
    return LinearCode(pair.ctx, TOP, rows), D


def vectorial_subfield_distribution(pair: VectorialPair, workers: int = 1,
                                    punctured: bool = False,
                                    restrict_a_zero: bool = False
                                    ) -> WeightDistribution:
    """Brute-force distribution of the vectorial subfield code from its
    trace representation; restrict_a_zero keeps only the rows with a = 0
    (the first-generic sub-code)."""
    ctx = pair.ctx
    if ctx.p != 2 or ctx.r != 1:
        raise BudgetError("vectorial brute force implemented for q = 2")
    D = pair.D.tuples
    nD = len(D)
    trp = ctx._tr_prime
    mul = ctx.mul

    def comp_masks(coords):
        masks = []
        for b in ctx.elements():
            acc = 0
            for j, x in enumerate(coords):
                if trp[mul(b, x)]:
                    acc |= 1 << j
            masks.append(acc)
        return masks

    Xb = comp_masks([t[0] for t in D])
    Yc = comp_masks([t[1] for t in D])
    deltas = [trp[b] for b in ctx.elements()]
    payload = (Xb, Yc, deltas, nD, ctx.order, punctured, restrict_a_zero)
    chunks = _split_range(ctx.order**2, workers)
    results = _run_chunks(_vectorial_chunk_worker, payload, chunks, workers)
    counts: dict = {}
    for part in results:
        for w, cnt in part.items():
            counts[w] = counts.get(w, 0) + cnt
    n = nD + (0 if punctured else 1)
    k = _dim_from_size(sum(counts.values()), 2)
    return WeightDistribution(counts, n, k, 2)


def _vectorial_chunk_worker(payload, lo, hi):
    Xb, Yc, deltas, nD, size, punctured, a_zero = payload
    ones = (1 << nD) - 1
    counts: dict = {}
    for idx in range(lo, hi):
        c, b = idx % size, idx // size
        body = Xb[b] ^ Yc[c]
        dl = 0 if punctured else deltas[b]
        w0 = dl + body.bit_count()
        counts[w0] = counts.get(w0, 0) + 1
        if not a_zero:
            w1 = dl + (ones ^ body).bit_count()
            counts[w1] = counts.get(w1, 0) + 1
    return counts


def composed_inner_function(f: FnSpec, g: FnSpec) -> FnSpec:
    """h = f^(-1) o g; refuses when f is not invertible."""
    if not f.is_permutation():
        raise HypothesisError("f must be invertible")
    return fn_compose(fn_invert(f), g)


def weights_vectorial_predicted(f: FnSpec, g: FnSpec) -> PredictedDistribution:
    """The four-weight table of the punctured binary subfield code when
    h = f^(-1) o g is normalized with a single plateau amplitude."""
    ctx = f.dom
    if ctx.p != 2 or ctx.r != 1:
        raise HypothesisError("the vectorial table is proved for q = 2 only")
    h = composed_inner_function(f, g)
    if not h.is_normalized():
        raise HypothesisError("h = f^(-1) o g must be normalized (h(0) = 0)")
    spec = spectrum_full(h)
    if spec.s is None or spec.s == 0:
        raise HypothesisError(
            "h = f^(-1) o g has no single plateau amplitude"
        )
    m, s = ctx.m, spec.s
    if (m + s) % 2:
        raise HypothesisError(f"inconsistent plateau parity (m={m}, s={s})")
    n = 1 << m
    mid = 1 << (m - 1)
    spread = 1 << ((m + s - 2) // 2)
    extreme = (1 << (2 * m - s)) - (1 << (m - s))
    rows = (
        (0, 1, "zero"),
        (mid - spread, extreme, "spectrum+"),
        (mid, (2 ** (m + 1) - 2) * (2**m - 2 ** (m - s) + 1), "spectrum0"),
        (mid + spread, extreme, "spectrum-"),
        (n, 1, "complement"),
    )
    pred = PredictedDistribution(rows, n, 2 * m + 1, 2, f"plateaued-pair:s={s}")
    pred.check_internal()
    return pred


def first_generic_predicted(g: FnSpec, exponential_reading: bool = True
                            ) -> PredictedDistribution:
    """Three-weight table for the code built from the inverse of an
    invertible, normalized, single-amplitude plateaued g.

    The one ambiguous multiplicity term is 2^((m-s-2)/2) under the
    exponential reading and (m-s-2) under the linear one; brute force at
    (m, s) = (9, 1) separates the two and confirms the exponential reading,
    which is the default.
    """
    ctx = g.dom
    if ctx.p != 2 or ctx.r != 1:
        raise HypothesisError("first-generic table is binary")
    if not g.is_permutation():
        raise HypothesisError("g must be invertible")
    if not g.is_normalized():
        raise HypothesisError("g must be normalized")
    spec = spectrum_full(g)
    if spec.s is None or spec.s == 0:
        raise HypothesisError("g has no single plateau amplitude")
    m, s = ctx.m, spec.s
    if (m - s) % 2:
        raise HypothesisError(f"inconsistent plateau parity (m={m}, s={s})")
    n = 1 << m
    mid = 1 << (m - 1)
    spread = 1 << ((m + s - 2) // 2)
    half = 1 << (m - s - 1) if m - s >= 1 else 0
    eps = (1 << ((m - s - 2) // 2)) if exponential_reading else (m - s - 2)
    units = (1 << m) - 1
    rows = (
        (0, 1, "zero"),
        (mid - spread, units * (half + eps), "spectrum+"),
        (mid, 2 ** (2 * m) + 2 ** (m - s) - 2 ** (2 * m - s) - 1, "spectrum0"),
        (mid + spread, units * (half - eps), "spectrum-"),
    )
    pred = PredictedDistribution(rows, n, 2 * m, 2, "first-generic-plateaued")
    pred.check_internal()
    return pred


def first_generic_code(g: FnSpec) -> LinearCode:
    """Binary subfield code of the 2-row evaluation code (x; g(x)): the
    classical construction {Tr(a g(x) + b x)}."""
    ctx = g.dom
    if g.kind != "vectorial" or g.cod is not ctx:
        raise ValueError("first generic construction takes a self-map")
    rows = [
        tuple(ctx.elements()),
        tuple(g.table),
    ]
    top = LinearCode(ctx, TOP, rows)
    from .linearcode import subfield_code

    return subfield_code(top, PRIME)


def second_generic_code(F: FnSpec, include_linear: bool = True) -> LinearCode:
    """The length-p^n prime-field evaluation code of a vectorial F.

    With include_linear (the default) the code is spanned by the component
    codewords (Tr(a F(x)))_x together with the linear forms (Tr(b x))_x, so
    nonzero weights are 2^(n-1) - W_F(a, b)/2 over the whole spectrum in the
    binary case.  include_linear=False keeps only the component span, whose
    weights see just the W_F(a, 0) column (identically zero whenever F
    permutes and fixes 0).
    """
    if F.kind != "vectorial":
        raise ValueError("second generic construction takes a vectorial function")
    cod = F.cod
    dom = F.dom
    rows = []
    alpha = cod.p % cod.order
    for t in range(cod.n):
        beta = cod.pow(alpha, t)
        rows.append(tuple(cod.trace(cod.mul(beta, v), PRIME) for v in F.table))
    if include_linear:
        alpha_d = dom.p % dom.order
        for t in range(dom.n):
            beta = dom.pow(alpha_d, t)
            rows.append(tuple(dom.trace(dom.mul(beta, x), PRIME)
                              for x in dom.elements()))
    if not rows:
        rows = [tuple([0] * dom.order)]
    return LinearCode(dom, PRIME, rows)


# ---------------------------------------------------------------------------
# Deterministic chunked execution (optional process parallelism)
# ---------------------------------------------------------------------------

_WORKER_PAYLOAD = None


def _worker_init(payload):
    global _WORKER_PAYLOAD
    _WORKER_PAYLOAD = payload


def _scalar_pool_entry(args):
    return _scalar_chunk_worker(_WORKER_PAYLOAD, *args)


def _vectorial_pool_entry(args):
    return _vectorial_chunk_worker(_WORKER_PAYLOAD, *args)


_POOL_ENTRY = {
    _scalar_chunk_worker: _scalar_pool_entry,
    _vectorial_chunk_worker: _vectorial_pool_entry,
}


def _split_range(total: int, workers: int) -> list:
    workers = max(1, min(workers, total)) if total else 1
    step = (total + workers - 1) // workers
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _run_chunks(worker, payload, chunks, workers):
    """Run chunk workers, in processes when asked and possible; chunk
    results merge associatively so the output never depends on scheduling."""
    if workers > 1 and len(chunks) > 1:
        try:
            import multiprocessing as mp

            ctx = mp.get_context("fork")
            with ctx.Pool(processes=min(workers, len(chunks)),
                          initializer=_worker_init,
                          initargs=(payload,)) as pool:
                return pool.map(_POOL_ENTRY[worker], chunks)
        except (ImportError, OSError, ValueError):
            pass
    return [worker(payload, lo, hi) for lo, hi in chunks]
