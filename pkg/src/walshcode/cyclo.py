"""Exact arithmetic in the cyclotomic integer ring Z[zeta_p].

Every character sum and Walsh coefficient in this package is an element of
Z[zeta_p] for the relevant prime p, and all identities we verify are exact
integer identities, so no floating point appears anywhere.  Elements are
stored as canonical coefficient vectors of length p-1 over the power basis
1, zeta, ..., zeta^(p-2), with the relation 1 + zeta + ... + zeta^(p-1) = 0
used to eliminate zeta^(p-1).

For p = 2 the ring degenerates to the ordinary integers (zeta_2 = -1) and a
CycInt is just an integer in a length-1 coefficient vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class CycInt:
    """An element of Z[zeta_p] in canonical form."""

    p: int
    coeffs: tuple  # length p-1, coefficient of zeta^i at position i

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("p must be a prime >= 2")
        if len(self.coeffs) != self.p - 1:
            raise ValueError(
                f"coefficient vector must have length p-1={self.p - 1}, "
                f"got {len(self.coeffs)}"
            )

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(p: int) -> "CycInt":
        return CycInt(p, (0,) * (p - 1))

    @staticmethod
    def one(p: int) -> "CycInt":
        return CycInt.integer(p, 1)

    @staticmethod
    def integer(p: int, n: int) -> "CycInt":
        return CycInt(p, (n,) + (0,) * (p - 2))

    @staticmethod
    def root(p: int, k: int) -> "CycInt":
        """zeta_p^k for any integer exponent k."""
        return CycInt.from_counts(p, _one_hot(p, k % p))

    @staticmethod
    def from_counts(p: int, counts: Sequence[int]) -> "CycInt":
        """Sum counts[k] * zeta_p^k over k = 0..p-1, canonically reduced.

        This is the workhorse constructor for character sums: accumulate
        integer counts per exponent, convert once.
        """
        if len(counts) != p:
            raise ValueError(f"counts must have length p={p}")
        top = counts[p - 1]
        return CycInt(p, tuple(counts[i] - top for i in range(p - 1)))

    # -- ring operations ----------------------------------------------

    def _check(self, other: "CycInt") -> None:
        if self.p != other.p:
            raise ValueError(f"mismatched cyclotomic orders {self.p} != {other.p}")

    def __add__(self, other: "CycInt") -> "CycInt":
        self._check(other)
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycInt") -> "CycInt":
        self._check(other)
        return CycInt(self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycInt":
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __mul__(self, other) -> "CycInt":
        if isinstance(other, int):
            return CycInt(self.p, tuple(a * other for a in self.coeffs))
        self._check(other)
        p = self.p
        # cyclic convolution in Z[x]/(x^p - 1), then canonicalize
        prod = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[(i + j) % p] += a * b
        return CycInt.from_counts(p, prod)

    __rmul__ = __mul__

    def conj(self) -> "CycInt":
        """Complex conjugation, zeta -> zeta^(p-1)."""
        p = self.p
        counts = [0] * p
        for i, a in enumerate(self.coeffs):
            counts[(-i) % p] += a
        return CycInt.from_counts(p, counts)

    def norm2(self) -> "CycInt":
        """|self|^2 = self * conj(self), an element of the real subring."""
        return self * self.conj()

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def is_rational(self) -> bool:
        return all(a == 0 for a in self.coeffs[1:])

    def as_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def __repr__(self) -> str:
        if self.is_rational():
            return f"CycInt(p={self.p}, {self.coeffs[0]})"
        terms = " + ".join(
            f"{a}*z^{i}" for i, a in enumerate(self.coeffs) if a
        )
        return f"CycInt(p={self.p}, {terms})"


def _one_hot(p: int, k: int) -> list:
    v = [0] * p
    v[k] = 1
    return v


def cyc_sum(terms: Iterable[CycInt], p: int) -> CycInt:
    acc = CycInt.zero(p)
    for t in terms:
        acc = acc + t
    return acc
