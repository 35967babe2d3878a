"""Finite-field tower arithmetic GF(p) <= GF(q) <= GF(q^m), q = p^r.

The whole tower lives inside one ambient field GF(p^(r*m)) built from the
lexicographically smallest irreducible modulus of degree r*m over GF(p)
(coefficients compared from the constant term up).  Elements are plain ints:
the element with polynomial-basis coefficients (c_0, ..., c_{n-1}) has index
sum(c_i * p^i), so 0 is the additive identity, 1 has index 1, and the class
of x has index p.  The intermediate field GF(q) is the subfield fixed by the
Frobenius power y -> y^q; no second modulus is ever chosen.

Everything here is exact integer arithmetic, deterministic across runs, and
immutable after construction, so contexts are safe to share and cache.
"""

from __future__ import annotations

import functools
from typing import Iterable

DEFAULT_SIZE_CAP = 2**24

PRIME = "prime"
MID = "mid"
TOP = "top"
LEVELS = (PRIME, MID, TOP)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict:
    """Prime factorization by trial division (fine at desk scale)."""
    out = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Polynomials over GF(p) as coefficient tuples, constant term first.
# ---------------------------------------------------------------------------

def poly_trim(c: tuple) -> tuple:
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def poly_mod(a: tuple, b: tuple, p: int) -> tuple:
    """a mod b over GF(p); b must be nonzero."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, -1, p)
    for i in range(len(a) - 1, db - 1, -1):
        coef = a[i] % p
        if coef:
            factor = (coef * inv_lb) % p
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - factor * b[j]) % p
    return poly_trim(tuple(x % p for x in a))


def poly_mul(a: tuple, b: tuple, p: int) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return poly_trim(tuple(out))


def _monic_polys(p: int, deg: int) -> Iterable[tuple]:
    """Monic degree-deg polynomials in lexicographic order of
    (c_0, c_1, ..., c_{deg-1})."""
    for w in range(p**deg):
        coeffs = []
        rest = w
        for i in range(deg):
            power = p ** (deg - 1 - i)
            coeffs.append(rest // power)
            rest %= power
        yield tuple(coeffs) + (1,)


def poly_is_irreducible(f: tuple, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(f) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    if f[0] == 0:  # divisible by x
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not poly_mod(f, g, p):
                return False
    return True


def smallest_irreducible(p: int, deg: int) -> tuple:
    for f in _monic_polys(p, deg):
        if poly_is_irreducible(f, p):
            return f
    raise RuntimeError(f"no irreducible polynomial of degree {deg} over GF({p})")


# ---------------------------------------------------------------------------
# Field context
# ---------------------------------------------------------------------------

class FieldCtx:
    """Tower GF(p) <= GF(q) <= GF(q^m) with q = p^r, realized in GF(p^(rm)).

    Use :func:`field_new` rather than constructing directly; contexts are
    cached and shared.
    """

    def __init__(self, p: int, r: int, m: int, size_cap: int = DEFAULT_SIZE_CAP):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if r < 1 or m < 1:
            raise ValueError("extension degrees must be >= 1")
        if p ** (r * m) > size_cap:
            raise ValueError(
                f"field size {p}^{r * m} exceeds the size cap {size_cap}"
            )
        self.p = p
        self.r = r
        self.m = m
        self.n = r * m            # degree of the top field over GF(p)
        self.q = p**r             # mid field size
        self.order = p**self.n    # top field size
        self.modulus = smallest_irreducible(p, self.n)

        self._digits = None
        self._add_table = None
        self._build_mul_tables()
        self._build_trace_norm()
        self._mid = None
        self._mid_tr_prime = None
        self._mid_coords = None

    # -- construction helpers -------------------------------------------

    def _idx_digits(self, idx: int) -> tuple:
        p = self.p
        out = []
        for _ in range(self.n):
            idx, d = divmod(idx, p)
            out.append(d)
        return tuple(out)

    def _digits_idx(self, digs) -> int:
        idx = 0
        for d in reversed(digs):
            idx = idx * self.p + d
        return idx

    def _raw_mul(self, a: int, b: int) -> int:
        """Polynomial multiplication mod the modulus, index-coded operands."""
        pa = poly_trim(self._idx_digits(a))
        pb = poly_trim(self._idx_digits(b))
        prod = poly_mod(poly_mul(pa, pb, self.p), self.modulus, self.p)
        return self._digits_idx(prod + (0,) * (self.n - len(prod)))

    def _build_mul_tables(self):
        order = self.order
        if self.p != 2 and order <= 4096:
            self._digits = [self._idx_digits(i) for i in range(order)]
        if self.p != 2 and order <= 1024:
            self._add_table = [
                [self.add(a, b) for b in range(order)] for a in range(order)
            ]

        # smallest-index primitive element, then exp/log tables
        fac = factorize(order - 1) if order > 2 else {}
        prim = None
        for g in range(1, order):
            if order == 2:
                prim = 1
                break
            ok = True
            for ell in fac:
                if self._pow_raw(g, (order - 1) // ell) == 1:
                    ok = False
                    break
            if ok:
                prim = g
                break
        assert prim is not None
        self.primitive = prim

        exp = [0] * (2 * (order - 1) if order > 2 else 2)
        log = [0] * order
        v = 1
        for i in range(order - 1):
            exp[i] = v
            log[v] = i
            v = self._raw_mul(v, prim)
        for i in range(order - 1, len(exp)):
            exp[i] = exp[i - (order - 1)]
        self._exp = exp
        self._log = log

    def _pow_raw(self, a: int, e: int) -> int:
        out = 1
        base = a
        while e:
            if e & 1:
                out = self._raw_mul(out, base)
            base = self._raw_mul(base, base)
            e >>= 1
        return out

    def _build_trace_norm(self):
        order, p, n = self.order, self.p, self.n
        tr_p = [0] * order
        nm_p = [0] * order
        tr_q = [0] * order
        nm_q = [0] * order
        for x in range(1, order):
            # absolute trace/norm via conjugate orbits under x -> x^p
            s = x
            c = x
            pr = x
            for _ in range(n - 1):
                c = self.pow(c, p)
                s = self.add(s, c)
                pr = self.mul(pr, c)
            tr_p[x] = s
            nm_p[x] = pr
            # relative to the mid field: conjugates under x -> x^q
            s = x
            c = x
            pr = x
            for _ in range(self.m - 1):
                c = self.pow(c, self.q)
                s = self.add(s, c)
                pr = self.mul(pr, c)
            tr_q[x] = s
            nm_q[x] = pr
        self._tr_prime = tr_p
        self._norm_prime = nm_p
        self._tr_mid = tr_q
        self._norm_mid = nm_q

    # -- arithmetic -------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        p = self.p
        if self._digits is not None:
            da, db = self._digits[a], self._digits[b]
            return self._digits_idx(tuple((x + y) % p for x, y in zip(da, db)))
        out = 0
        mult = 1
        while a or b:
            a, xa = divmod(a, p)
            b, xb = divmod(b, p)
            out += ((xa + xb) % p) * mult
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        da = self._digits[a] if self._digits is not None else self._idx_digits(a)
        return self._digits_idx(tuple((-x) % p for x in da))

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        if self.order == 2:
            return 1
        return self._exp[(self.order - 1) - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0
        if self.order == 2:
            return a
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def embed_int(self, k: int) -> int:
        """The prime-subfield element k*1; its index is k mod p."""
        return k % self.p

    def elements(self) -> range:
        return range(self.order)

    def units(self) -> range:
        return range(1, self.order)

    def mul_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        d = self._log[a]
        n1 = self.order - 1
        if n1 == 0:
            return 1
        from math import gcd

        return n1 // gcd(d, n1)

    def quad_char(self, a: int) -> int:
        """Quadratic character of the top field (odd order): +1/-1, 0 at 0."""
        if self.order % 2 == 0:
            raise ValueError("quadratic character needs odd field order")
        if a == 0:
            return 0
        return -1 if self._log[a] & 1 else 1

    # -- trace / norm -------------------------------------------------------

    def trace(self, x: int, to: str = PRIME) -> int:
        """Tr to the prime field (absolute) or to the mid field GF(q)."""
        if to == PRIME:
            return self._tr_prime[x]
        if to == MID:
            return self._tr_mid[x]
        raise ValueError(f"unknown trace target {to!r}")

    def norm(self, x: int, to: str = PRIME) -> int:
        if to == PRIME:
            return self._norm_prime[x]
        if to == MID:
            return self._norm_mid[x]
        raise ValueError(f"unknown norm target {to!r}")

    # -- mid subfield -------------------------------------------------------

    def mid_elements(self) -> tuple:
        """Elements of the embedded GF(q), sorted by index (found once by
        exhaustive Frobenius-fix search, then cached)."""
        if self._mid is None:
            q = self.q
            self._mid = tuple(x for x in range(self.order) if self.pow(x, q) == x)
            assert len(self._mid) == q
        return self._mid

    def is_mid(self, x: int) -> bool:
        return self.pow(x, self.q) == x

    def mid_tr_prime(self, u: int) -> int:
        """Tr_{q/p}(u) for u in the embedded mid field (index in 0..p-1)."""
        if self._mid_tr_prime is None:
            tbl = {}
            for w in self.mid_elements():
                s = w
                c = w
                for _ in range(self.r - 1):
                    c = self.pow(c, self.p)
                    s = self.add(s, c)
                assert s < self.p
                tbl[w] = s
            self._mid_tr_prime = tbl
        return self._mid_tr_prime[u]

    def mid_coords(self, y: int, shift: int = 0) -> tuple:
        """Coordinates of y over the GF(q)-basis {alpha^(shift+i)}_{i<m},
        alpha the class of x.  shift=1 gives the alternate basis used by the
        basis-independence checks."""
        table = self._mid_coords_table(shift)
        return table[y]

    @functools.lru_cache(maxsize=4)
    def _mid_coords_table(self, shift: int) -> dict:
        alpha = self.p % self.order
        basis = [self.pow(alpha, shift + i) for i in range(self.m)]
        mids = self.mid_elements()
        table = {}

        def rec(i, acc, coords):
            if i == self.m:
                table[acc] = tuple(coords)
                return
            for u in mids:
                rec(i + 1, self.add(acc, self.mul(u, basis[i])), coords + [u])

        rec(0, 0, [])
        if len(table) != self.order:
            raise RuntimeError(f"basis with shift {shift} does not span")
        return table

    # -- misc ---------------------------------------------------------------

    def descriptor(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "m": self.m,
            "modulus": list(self.modulus),
            "primitive": self.primitive,
        }

    def level_size(self, level: str) -> int:
        return {PRIME: self.p, MID: self.q, TOP: self.order}[level]

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, r={self.r}, m={self.m})"


@functools.lru_cache(maxsize=None)
def field_new(p: int, r: int, m: int, size_cap: int = DEFAULT_SIZE_CAP) -> FieldCtx:
    """Build (or fetch the cached) tower GF(p) <= GF(p^r) <= GF(p^(r*m))."""
    return FieldCtx(p, r, m, size_cap)
