"""Linear codes over tower fields: generator matrices, subfield/trace codes,
duals, puncturing, exact weight distributions and the MacWilliams transform.

A code carries the tower context plus the level its symbols live in ("top",
"mid" or "prime"); symbols are always stored as top-field element indices
that happen to lie in the relevant subfield, so one set of field tables
serves every level.  Weight enumeration walks the message space in
Gray-code order: each successive codeword differs by one (scaled) generator
row, which makes enumeration O(q^k * n) additions -- and O(q^k) XOR/popcount
on packed bitmasks for binary symbols.

Dual weight distributions beyond the enumeration budget come from the exact
MacWilliams identity over big integers, never from sampling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Optional

from .galois import FieldCtx, LEVELS, MID, PRIME, TOP, field_new


DEFAULT_BUDGET = 2**26


class BudgetError(RuntimeError):
    """An enumeration would exceed the configured codeword budget."""


@dataclass
class WeightDistribution:
    """counts[w] = number of codewords of Hamming weight w."""

    counts: dict
    n: int
    k: int
    q: int

    def total(self) -> int:
        return sum(self.counts.values())

    def d(self) -> Optional[int]:
        pos = [w for w, c in self.counts.items() if w > 0 and c > 0]
        return min(pos) if pos else None

    def w_max(self) -> Optional[int]:
        pos = [w for w, c in self.counts.items() if w > 0 and c > 0]
        return max(pos) if pos else None

    def as_pairs(self) -> list:
        return sorted((w, c) for w, c in self.counts.items() if c)

    def to_csv(self) -> str:
        return "weight,count\n" + "\n".join(
            f"{w},{c}" for w, c in self.as_pairs()
        )

    def to_markdown(self) -> str:
        lines = ["| Weight | Multiplicity |", "| --- | --- |"]
        lines += [f"| {w} | {c} |" for w, c in self.as_pairs()]
        return "\n".join(lines)


class LinearCode:
    """A generator matrix over one level of a tower field."""

    def __init__(self, ctx: FieldCtx, level: str, gen: Iterable[Iterable[int]]):
        if level not in LEVELS:
            raise ValueError(f"unknown level {level!r}")
        self.ctx = ctx
        self.level = level
        self.gen = tuple(tuple(row) for row in gen)
        if not self.gen:
            raise ValueError("a code needs at least one generator row (use a zero row)")
        self.n = len(self.gen[0])
        if any(len(row) != self.n for row in self.gen):
            raise ValueError("ragged generator matrix")
        self._rref = None
        self._sub_basis = None

    # -- level helpers ------------------------------------------------------

    @property
    def q_sym(self) -> int:
        return self.ctx.level_size(self.level)

    def _subfield_scalars(self) -> tuple:
        if self.level == TOP:
            return tuple(self.ctx.elements())
        if self.level == MID:
            return self.ctx.mid_elements()
        return tuple(range(self.ctx.p))

    def _prime_basis_of_level(self) -> tuple:
        """An F_p-basis of the symbol field (for Gray enumeration)."""
        ctx = self.ctx
        if self.level == PRIME:
            return (1,)
        deg = ctx.n if self.level == TOP else ctx.r
        alpha = ctx.primitive if self.level == TOP else None
        if self.level == TOP:
            basis = [ctx.pow(ctx.p % ctx.order, i) for i in range(deg)]
            return tuple(basis)
        # mid level: pick an F_p-basis of the embedded GF(q) greedily
        span = {0}
        basis = []
        for u in ctx.mid_elements():
            if u not in span:
                basis.append(u)
                span = {ctx.add(s, ctx.mul(c, u)) for s in span
                        for c in range(ctx.p)}
            if len(basis) == deg:
                break
        return tuple(basis)

    # -- linear algebra -------------------------------------------------------

    def rref(self) -> tuple:
        """Reduced rows (a basis) and their pivot columns."""
        if self._rref is None:
            ctx = self.ctx
            rows = [list(r) for r in self.gen]
            pivots = []
            rank = 0
            for col in range(self.n):
                piv = next(
                    (r for r in range(rank, len(rows)) if rows[r][col] != 0), None
                )
                if piv is None:
                    continue
                rows[rank], rows[piv] = rows[piv], rows[rank]
                inv = ctx.inv(rows[rank][col])
                rows[rank] = [ctx.mul(inv, x) for x in rows[rank]]
                for r in range(len(rows)):
                    if r != rank and rows[r][col] != 0:
                        f = rows[r][col]
                        rows[r] = [
                            ctx.sub(x, ctx.mul(f, y))
                            for x, y in zip(rows[r], rows[rank])
                        ]
                pivots.append(col)
                rank += 1
                if rank == len(rows):
                    break
            self._rref = (tuple(tuple(r) for r in rows[:rank]), tuple(pivots))
        return self._rref

    @property
    def k(self) -> int:
        return len(self.rref()[0])

    def basis(self) -> tuple:
        return self.rref()[0]

    def contains(self, word) -> bool:
        ctx = self.ctx
        rows, pivots = self.rref()
        w = list(word)
        for row, col in zip(rows, pivots):
            if w[col] != 0:
                f = w[col]
                w = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(w, row)]
        return not any(w)

    def is_subcode(self, other: "LinearCode") -> bool:
        """True iff self's row space is contained in other's."""
        return all(other.contains(row) for row in self.gen)

    def same_row_space(self, other: "LinearCode") -> bool:
        return self.is_subcode(other) and other.is_subcode(self)

    def dual(self) -> "LinearCode":
        """Null-space basis; G . H^T = 0 exactly."""
        ctx = self.ctx
        rows, pivots = self.rref()
        free = [c for c in range(self.n) if c not in pivots]
        out = []
        for fc in free:
            w = [0] * self.n
            w[fc] = 1
            for row, pc in zip(rows, pivots):
                w[pc] = ctx.neg(row[fc])
            out.append(tuple(w))
        if not out:
            out = [tuple([0] * self.n)]
        return LinearCode(self.ctx, self.level, out)

    def puncture(self, pos: int) -> "LinearCode":
        if not 0 <= pos < self.n:
            raise IndexError(f"puncture position {pos} out of range")
        return LinearCode(
            self.ctx, self.level,
            [row[:pos] + row[pos + 1:] for row in self.gen],
        )

    def gram_is_zero(self) -> bool:
        """G . G^T == 0 (Euclidean self-orthogonality certificate)."""
        ctx = self.ctx
        rows = self.basis()
        for a in rows:
            for b in rows:
                acc = 0
                for x, y in zip(a, b):
                    acc = ctx.add(acc, ctx.mul(x, y))
                if acc:
                    return False
        return True

    # -- enumeration ---------------------------------------------------------

    def _expanded_prime_rows(self) -> list:
        """{beta * row} for beta in an F_p-basis of the symbol field: the
        row space as an F_p-space, enabling p-ary Gray enumeration."""
        ctx = self.ctx
        out = []
        for row in self.basis():
            for beta in self._prime_basis_of_level():
                out.append([ctx.mul(beta, x) for x in row])
        return out

    def codewords(self, budget: int = DEFAULT_BUDGET) -> Iterator[tuple]:
        """Yields every codeword once, zero word first."""
        ctx = self.ctx
        p = ctx.p
        rows = self._expanded_prime_rows()
        dim = len(rows)
        if p**dim > budget:
            raise BudgetError(f"{p}^{dim} codewords exceed budget {budget}")
        cur = [0] * self.n
        yield tuple(cur)
        for idx, sign in _pary_gray(p, dim):
            row = rows[idx]
            if sign > 0:
                cur = [ctx.add(x, y) for x, y in zip(cur, row)]
            else:
                cur = [ctx.sub(x, y) for x, y in zip(cur, row)]
            yield tuple(cur)

    def weight_distribution(self, budget: int = DEFAULT_BUDGET) -> WeightDistribution:
        ctx = self.ctx
        p = ctx.p
        rows = self._expanded_prime_rows()
        dim = len(rows)
        if p**dim > budget:
            raise BudgetError(f"{p}^{dim} codewords exceed budget {budget}")
        counts: dict = {}
        if p == 2 and self.level in (PRIME, MID) and self.q_sym == 2:
            # packed path: one int per codeword, weight = popcount
            masks = [sum(1 << j for j, x in enumerate(r) if x) for r in rows]
            cur = 0
            counts[0] = 1
            for t in range(1, 2**dim):
                cur ^= masks[(t & -t).bit_length() - 1]
                w = cur.bit_count()
                counts[w] = counts.get(w, 0) + 1
        else:
            for word in self.codewords(budget):
                w = sum(1 for x in word if x)
                counts[w] = counts.get(w, 0) + 1
        return WeightDistribution(counts, self.n, self.k, self.q_sym)

    def min_distance(self, budget: int = DEFAULT_BUDGET) -> int:
        """d by direct enumeration, or by exact MacWilliams through the dual
        when the primal is over budget but the dual is not."""
        p = self.ctx.p
        dim_bits = self.k * len(self._prime_basis_of_level())
        if p**dim_bits <= budget:
            return self.weight_distribution(budget).d() or 0
        dual = self.dual()
        dual_bits = dual.k * len(self._prime_basis_of_level())
        if p**dual_bits <= budget:
            wd = macwilliams(dual.weight_distribution(budget))
            return wd.d() or 0
        raise BudgetError("neither the code nor its dual fits the budget")

    # -- import/export ---------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {
                "field": self.ctx.descriptor(),
                "level": self.level,
                "gen": [list(r) for r in self.gen],
            },
            sort_keys=True,
        )

    @staticmethod
    def from_json(text: str) -> "LinearCode":
        obj = json.loads(text)
        f = obj["field"]
        ctx = field_new(f["p"], f["r"], f["m"])
        return LinearCode(ctx, obj["level"], obj["gen"])

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.gen)

    @staticmethod
    def from_text(ctx: FieldCtx, level: str, text: str) -> "LinearCode":
        rows = [
            [int(tok) for tok in line.split()]
            for line in text.strip().splitlines()
            if line.strip()
        ]
        return LinearCode(ctx, level, rows)

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}] over {self.level} of {self.ctx!r})"


def _pary_gray(p: int, dim: int) -> Iterator[tuple]:
    """Reflected p-ary Gray walk over p^dim counters: yields (digit, +-1)
    steps such that consecutive vectors differ by one +-1 digit bump."""
    digits = [0] * dim
    direction = [1] * dim
    total = p**dim
    for _ in range(total - 1):
        i = 0
        while True:
            nxt = digits[i] + direction[i]
            if 0 <= nxt < p:
                digits[i] = nxt
                yield i, direction[i]
                break
            direction[i] = -direction[i]
            i += 1


# ---------------------------------------------------------------------------
# Subfield (trace) codes
# ---------------------------------------------------------------------------

def subfield_code(C: LinearCode, to: str = MID, basis_shift: int = 0) -> LinearCode:
    """The GF(q)- (or GF(p)-) code of a top-field code via the trace rows
    Tr(beta_t * g_i) over the polynomial basis {alpha^(basis_shift + t)}.

    The row space is basis-independent; basis_shift=1 exists so tests can
    prove that for the codes this package produces.
    """
    if C.level != TOP:
        raise ValueError("subfield_code expects a top-field code")
    if to not in (MID, PRIME):
        raise ValueError("subfield target must be 'mid' or 'prime'")
    ctx = C.ctx
    alpha = ctx.p % ctx.order
    deg = ctx.m if to == MID else ctx.n
    rows = []
    for g in C.gen:
        for t in range(deg):
            beta = ctx.pow(alpha, basis_shift + t)
            rows.append(tuple(ctx.trace(ctx.mul(beta, x), to) for x in g))
    return LinearCode(ctx, to, rows)


# ---------------------------------------------------------------------------
# MacWilliams transform (exact, big integers)
# ---------------------------------------------------------------------------

def krawtchouk(n: int, q: int, j: int, i: int) -> int:
    """K_j(i) = sum_t (-1)^t (q-1)^(j-t) C(i,t) C(n-i, j-t)."""
    return sum(
        (-1) ** t * (q - 1) ** (j - t) * comb(i, t) * comb(n - i, j - t)
        for t in range(0, j + 1)
    )


def macwilliams_coeff(wd: WeightDistribution, j: int) -> int:
    """One exact dual count B_j; raises on non-integral output, which
    signals an inconsistent input distribution."""
    n, q, k = wd.n, wd.q, wd.k
    size = q**k
    acc = sum(c * krawtchouk(n, q, j, w) for w, c in wd.counts.items() if c)
    b, rem = divmod(acc, size)
    if rem:
        raise ValueError(f"non-integral dual count at weight {j}")
    return b


def macwilliams(wd: WeightDistribution) -> WeightDistribution:
    """The dual code's exact weight distribution.

    Raises if any coefficient comes out non-integral, which signals an
    inconsistent input distribution.
    """
    n, q, k = wd.n, wd.q, wd.k
    size = q**k
    if wd.total() != size:
        raise ValueError(
            f"inconsistent distribution: {wd.total()} codewords, expected {size}"
        )
    out = {}
    for j in range(n + 1):
        b = macwilliams_coeff(wd, j)
        if b:
            out[j] = b
    return WeightDistribution(out, n, n - k, q)


def dual_distance_macwilliams(wd: WeightDistribution, limit: Optional[int] = None
                              ) -> int:
    """Dual minimum distance: the first j >= 1 with B_j > 0, each B_j exact.

    Avoids transforming the whole distribution when only the distance is
    wanted (the full transform at large n is dominated by huge binomials).
    """
    if wd.total() != wd.q**wd.k:
        raise ValueError("inconsistent distribution")
    top = limit if limit is not None else wd.n
    for j in range(1, top + 1):
        if macwilliams_coeff(wd, j) > 0:
            return j
    raise RuntimeError("no nonzero dual weight found (dual is the zero code?)")
