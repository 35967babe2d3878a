"""Catalog and algebra of scalar and vectorial functions over field towers.

Scalar functions map GF(q^m) -> GF(q) (values land in the embedded mid
subfield of a tower context); vectorial functions map GF(p^n) -> GF(p^m')
between two contexts of the same characteristic.  Functions are materialized
as full evaluation tables: at desk scale that is the fastest exact
representation and makes composition and inversion trivial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .galois import FieldCtx, MID, field_new


class CatalogError(ValueError):
    """A descriptor names a function whose construction conditions fail."""


@dataclass(frozen=True)
class FnSpec:
    """A function given by its full evaluation table.

    kind is "scalar" (codomain = mid subfield of dom) or "vectorial"
    (codomain = the top field of cod).  table[i] is the element index of the
    value at the domain element of index i.
    """

    kind: str
    dom: FieldCtx
    table: tuple
    meta: str
    cod: Optional[FieldCtx] = None  # vectorial only

    def __post_init__(self):
        if self.kind not in ("scalar", "vectorial"):
            raise ValueError(f"bad kind {self.kind!r}")
        if len(self.table) != self.dom.order:
            raise ValueError("table length must equal the domain size")
        if self.kind == "vectorial":
            if self.cod is None:
                raise ValueError("vectorial FnSpec needs a codomain context")
            if self.cod.p != self.dom.p:
                raise ValueError("mixed characteristic")
            top = max(self.table)
            if top >= self.cod.order:
                raise ValueError("table entry outside the codomain")
        else:
            for v in set(self.table):
                if not self.dom.is_mid(v):
                    raise ValueError("scalar value outside the mid subfield")

    # -- basic views ------------------------------------------------------

    @property
    def codomain(self) -> FieldCtx:
        return self.cod if self.kind == "vectorial" else self.dom

    def codomain_size(self) -> int:
        return self.cod.order if self.kind == "vectorial" else self.dom.q

    def __call__(self, x: int) -> int:
        return self.table[x]

    def is_normalized(self) -> bool:
        return self.table[0] == 0

    def is_permutation(self) -> bool:
        if self.kind == "vectorial" and self.cod.order != self.dom.order:
            return False
        if self.kind == "scalar" and self.dom.q != self.dom.order:
            return False
        return len(set(self.table)) == len(self.table)

    def __repr__(self) -> str:
        return f"FnSpec({self.kind}, {self.meta!r}, dom={self.dom!r})"


# ---------------------------------------------------------------------------
# Scalar catalog: GF(q^m) -> GF(q)
# ---------------------------------------------------------------------------

def fn_trace(ctx: FieldCtx) -> FnSpec:
    return FnSpec("scalar", ctx, tuple(ctx.trace(x, MID) for x in ctx.elements()), "tr")


def fn_trace_square(ctx: FieldCtx) -> FnSpec:
    tbl = tuple(ctx.trace(ctx.mul(x, x), MID) for x in ctx.elements())
    return FnSpec("scalar", ctx, tbl, "tr_square")


def fn_norm(ctx: FieldCtx) -> FnSpec:
    return FnSpec("scalar", ctx, tuple(ctx.norm(x, MID) for x in ctx.elements()), "norm")


def fn_scalar_zero(ctx: FieldCtx) -> FnSpec:
    return FnSpec("scalar", ctx, (0,) * ctx.order, "zero")


def fn_trace_power(ctx: FieldCtx, d: int) -> FnSpec:
    """x -> Tr_{q^m/q}(x^d)."""
    tbl = tuple(ctx.trace(ctx.pow(x, d), MID) for x in ctx.elements())
    return FnSpec("scalar", ctx, tbl, f"tr_pow:d={d}")


def fn_bent_monomial(ctx: FieldCtx) -> FnSpec:
    """The bent representative x -> Tr_{2^m/2}(g * x^(2^(m/2)+1)), m even,
    with g the context's primitive element.

    The image of x^(2^(m/2)+1) is the half-degree subfield, on which the
    relative trace vanishes, so a coefficient outside that subfield is
    required; the primitive element never lies in a proper subfield.  At
    m = 2 this table coincides with the norm.  Bentness is not assumed: the
    spectrum classifier re-verifies it wherever the catalog entry is used.
    """
    if ctx.p != 2 or ctx.r != 1 or ctx.m % 2:
        raise CatalogError("bent monomial needs a binary tower with m even")
    d = 2 ** (ctx.m // 2) + 1
    g = ctx.primitive
    tbl = tuple(ctx.trace(ctx.mul(g, ctx.pow(x, d)), MID) for x in ctx.elements())
    return FnSpec("scalar", ctx, tbl, "bent:monomial")


# ---------------------------------------------------------------------------
# Vectorial catalog: GF(p^n) -> GF(p^n) power maps and friends
# ---------------------------------------------------------------------------

def fn_power(ctx: FieldCtx, d: int, meta: Optional[str] = None) -> FnSpec:
    """x -> x^d on the top field, 0 -> 0."""
    tbl = tuple(ctx.pow(x, d) if x else 0 for x in ctx.elements())
    return FnSpec("vectorial", ctx, tbl, meta or f"power:d={d}", cod=ctx)


def fn_identity(ctx: FieldCtx) -> FnSpec:
    return fn_power(ctx, 1, "id")


def fn_vectorial_zero(ctx: FieldCtx) -> FnSpec:
    return FnSpec("vectorial", ctx, (0,) * ctx.order, "zero", cod=ctx)


def _require_odd_m(ctx: FieldCtx, name: str) -> int:
    m = ctx.n
    if ctx.p != 2:
        raise CatalogError(f"{name} exponents live over GF(2^m)")
    if m % 2 == 0:
        raise CatalogError(f"{name} requires odd extension degree, got m={m}")
    return m


def fn_gold(ctx: FieldCtx, i: int) -> FnSpec:
    m = _require_odd_m(ctx, "gold")
    if not (1 <= i <= (m - 1) // 2) or math.gcd(i, m) != 1:
        raise CatalogError(f"gold needs gcd(i,m)=1 and 1<=i<=(m-1)/2; got i={i}, m={m}")
    return fn_power(ctx, 2**i + 1, f"gold:i={i}")


def fn_kasami(ctx: FieldCtx, i: int) -> FnSpec:
    m = _require_odd_m(ctx, "kasami")
    if not (2 <= i <= (m - 1) // 2) or math.gcd(i, m) != 1:
        raise CatalogError(
            f"kasami needs gcd(i,m)=1 and 2<=i<=(m-1)/2; got i={i}, m={m}"
        )
    return fn_power(ctx, 2 ** (2 * i) - 2**i + 1, f"kasami:i={i}")


def fn_welch(ctx: FieldCtx) -> FnSpec:
    m = _require_odd_m(ctx, "welch")
    return fn_power(ctx, 2 ** ((m - 1) // 2) + 3, "welch")


def fn_niho(ctx: FieldCtx) -> FnSpec:
    m = _require_odd_m(ctx, "niho")
    if m % 4 == 1:
        d = 2 ** ((m - 1) // 2) + 2 ** ((m - 1) // 4) - 1
    elif m % 4 == 3:
        d = 2 ** ((m - 1) // 2) + 2 ** ((3 * m - 1) // 4) - 1
    else:
        raise CatalogError(f"niho needs m odd, got m={m}")
    return fn_power(ctx, d, "niho")


def fn_mm_product(ctx: FieldCtx) -> FnSpec:
    """Maiorana-McFarland-style product on a 1+(n-1) bit split:
    F(x0, y) = x0 * y as a map GF(2^n) -> GF(2^(n-1)).

    Every nonzero component is a rank-2 quadratic form, so F is uniformly
    (n-2)-plateaued; useful as a non-square-codomain plateaued specimen.
    """
    if ctx.p != 2 or ctx.r != 1 or ctx.n < 3:
        raise CatalogError("mm product needs a binary field with n >= 3")
    cod = field_new(2, 1, ctx.n - 1)
    tbl = tuple((x >> 1) if (x & 1) else 0 for x in ctx.elements())
    return FnSpec("vectorial", ctx, tbl, "mm", cod=cod)


# ---------------------------------------------------------------------------
# Algebra on tables
# ---------------------------------------------------------------------------

def fn_compose(outer: FnSpec, inner: FnSpec) -> FnSpec:
    if inner.kind == "vectorial" and outer.kind == "vectorial":
        if inner.cod.order != outer.dom.order or inner.cod.p != outer.dom.p:
            raise ValueError("codomain of inner must match domain of outer")
        tbl = tuple(outer.table[v] for v in inner.table)
        return FnSpec(
            "vectorial", inner.dom, tbl, f"({outer.meta})o({inner.meta})", cod=outer.cod
        )
    if outer.kind == "scalar" and inner.kind == "vectorial":
        if inner.cod is not outer.dom or inner.dom is not inner.cod:
            raise ValueError("scalar composition needs a self-map inner "
                             "function on the scalar's own domain")
        tbl = tuple(outer.table[v] for v in inner.table)
        return FnSpec("scalar", inner.dom, tbl, f"({outer.meta})o({inner.meta})")
    raise ValueError("unsupported composition kinds")


def fn_invert(f: FnSpec) -> FnSpec:
    if not f.is_permutation():
        raise ValueError(f"{f.meta!r} is not a bijection; cannot invert")
    inv = [0] * len(f.table)
    for x, y in enumerate(f.table):
        inv[y] = x
    return FnSpec(f.kind, f.codomain, tuple(inv), f"inv({f.meta})",
                  cod=f.dom if f.kind == "vectorial" else None)


def fn_normalize(f: FnSpec) -> FnSpec:
    """x -> f(x) - f(0); the zero shift multiplies every Walsh coefficient by
    a global root of unity and leaves the squared spectrum untouched."""
    f0 = f.table[0]
    if f0 == 0:
        return f
    ctx = f.codomain
    tbl = tuple(ctx.sub(v, f0) for v in f.table)
    return FnSpec(f.kind, f.dom, tbl, f"norm0({f.meta})",
                  cod=f.cod if f.kind == "vectorial" else None)


# ---------------------------------------------------------------------------
# Plateaued-function constructions on bit-split product domains (p = 2)
# ---------------------------------------------------------------------------

def _split_join(lo_bits: int):
    mask = (1 << lo_bits) - 1
    return (lambda z: (z & mask, z >> lo_bits)), (lambda a, b: a | (b << lo_bits))


def fn_primary_plateaued(ctx: FieldCtx, pi: FnSpec, phi: FnSpec, psi: FnSpec,
                         i: int) -> FnSpec:
    """F(x,y) = (x*pi(y) + phi(y), x*pi(y)^(2^i) + psi(y)) on
    GF(2^m) x GF(2^m), realized as a vectorial function on GF(2^(2m)) via the
    canonical bit split.

    The result is plateaued component by component but has no single
    amplitude in general; the spectrum records per-component values.
    """
    m = ctx.n
    if ctx.p != 2 or ctx.r != 1:
        raise CatalogError("primary construction is binary")
    if math.gcd(i, m) != 1:
        raise CatalogError(f"primary construction needs gcd(i,m)=1; got i={i}, m={m}")
    for g in (pi, phi, psi):
        if g.dom.order != ctx.order or g.codomain_size() != ctx.order:
            raise CatalogError("pi, phi, psi must map GF(2^m) to itself")
    if not pi.is_permutation():
        raise CatalogError("pi must be a permutation")
    big = field_new(2, 1, 2 * m)
    split, join = _split_join(m)
    tbl = []
    for z in big.elements():
        x, y = split(z)
        u = pi.table[y]
        out1 = ctx.mul(x, u) ^ phi.table[y]
        out2 = ctx.mul(x, ctx.pow(u, 2**i)) ^ psi.table[y] if u else psi.table[y]
        tbl.append(join(out1, out2))
    return FnSpec("vectorial", big, tuple(tbl), f"primary:i={i}:m={m}", cod=big)


def fn_secondary_plateaued(F: FnSpec, G: FnSpec) -> FnSpec:
    """Direct sum H(x,y) = (F(x), G(y)) on the bit-split product domain.

    The Walsh transform factorizes exactly over the product pairing:
    W_H((a,b),(u,v)) = W_F(a,u) * W_G(b,v).
    """
    if F.dom.p != 2 or G.dom.p != 2:
        raise ValueError("secondary construction is binary")
    nf, ng = F.dom.n, G.dom.n
    mf = F.codomain.n if F.kind == "vectorial" else F.dom.r
    mg = G.codomain.n if G.kind == "vectorial" else G.dom.r
    dom = field_new(2, 1, nf + ng)
    cod = field_new(2, 1, mf + mg)
    dsplit, _ = _split_join(nf)
    _, cjoin = _split_join(mf)
    tbl = []
    for z in dom.elements():
        x, y = dsplit(z)
        tbl.append(cjoin(F.table[x], G.table[y]))
    return FnSpec("vectorial", dom, tuple(tbl),
                  f"secondary({F.meta},{G.meta})", cod=cod)


# ---------------------------------------------------------------------------
# Descriptor parsing (the CLI-facing catalog)
# ---------------------------------------------------------------------------

SCALAR_NAMES = ("tr", "tr_square", "norm", "bent", "tr_pow", "zero")
VECTORIAL_NAMES = ("id", "power", "gold", "kasami", "welch", "niho", "mm",
                   "primary", "zero_v")


def _parse_kv(parts) -> dict:
    out = {}
    for part in parts:
        if "=" not in part:
            raise CatalogError(f"malformed descriptor component {part!r}")
        k, v = part.split("=", 1)
        out[k] = int(v)
    return out


class _Params(dict):
    """Descriptor parameters whose missing keys fail as catalog errors."""

    def __init__(self, desc, kv):
        super().__init__(kv)
        self._desc = desc

    def __missing__(self, key):
        raise CatalogError(f"descriptor {self._desc!r} is missing "
                           f"parameter {key!r}")


def parse_scalar(ctx: FieldCtx, desc: str) -> FnSpec:
    name, *rest = desc.split(":")
    kv = _parse_kv(rest) if name != "bent" else {}
    if name == "tr":
        return fn_trace(ctx)
    if name == "tr_square":
        return fn_trace_square(ctx)
    if name == "norm":
        return fn_norm(ctx)
    if name == "zero":
        return fn_scalar_zero(ctx)
    if name == "tr_pow":
        return fn_trace_power(ctx, kv["d"])
    if name == "bent":
        if rest != ["monomial"]:
            raise CatalogError(f"unknown bent variant in {desc!r}")
        return fn_bent_monomial(ctx)
    raise CatalogError(f"unknown scalar descriptor {desc!r}")


def parse_vectorial(ctx: FieldCtx, desc: str) -> FnSpec:
    name, *rest = desc.split(":")
    try:
        kv = _parse_kv(rest)
    except KeyError as exc:
        raise CatalogError(f"descriptor {desc!r} is missing parameter {exc}")
    kv = _Params(desc, kv)
    if name == "id":
        return fn_identity(ctx)
    if name == "power":
        return fn_power(ctx, kv["d"])
    if name == "gold":
        return fn_gold(ctx, kv["i"])
    if name == "kasami":
        return fn_kasami(ctx, kv["i"])
    if name == "welch":
        return fn_welch(ctx)
    if name == "niho":
        return fn_niho(ctx)
    if name == "mm":
        return fn_mm_product(ctx)
    if name == "zero_v":
        return fn_vectorial_zero(ctx)
    if name == "primary":
        half = field_new(2, 1, ctx.n // 2)
        if ctx.n % 2 or ctx.p != 2:
            raise CatalogError("primary descriptor needs an even binary degree")
        return fn_primary_plateaued(half, fn_identity(half),
                                    fn_vectorial_zero(half),
                                    fn_vectorial_zero(half), kv["i"])
    raise CatalogError(f"unknown vectorial descriptor {desc!r}")


def parse_fn(ctx: FieldCtx, desc: str) -> FnSpec:
    """Dispatch on the descriptor's leading name."""
    name = desc.split(":", 1)[0]
    try:
        if name in SCALAR_NAMES:
            return parse_scalar(ctx, desc)
        if name in VECTORIAL_NAMES:
            return parse_vectorial(ctx, desc)
    except KeyError as exc:
        raise CatalogError(f"descriptor {desc!r} is missing parameter {exc}")
    raise CatalogError(f"unknown descriptor {desc!r} (position 0: {name!r})")
