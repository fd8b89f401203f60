"""Square classes: the group Q*/(Q*)^2 in concrete form.

A class is a sign together with a positive squarefree kernel; multiplication
cancels the shared part of the kernels.  Subgroups generated by finitely many
classes are handled as GF(2) spans over the coordinates {-1} and the primes
involved, so orders come out as exact powers of two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arith import factor, squarefree_part


@dataclass(frozen=True)
class SquareClass:
    """An element of Q*/(Q*)^2, stored as sign and positive squarefree kernel."""

    sign: int
    kernel: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.kernel < 1:
            raise ValueError("kernel must be a positive integer")
        for p in (2, 3, 5, 7, 11, 13):  # cheap screen; class_of guarantees the rest
            if self.kernel % (p * p) == 0:
                raise ValueError(f"kernel {self.kernel} is divisible by {p}^2")

    @property
    def value(self) -> int:
        return self.sign * self.kernel

    def __str__(self) -> str:
        return f"[{self.value}]"

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if not isinstance(other, SquareClass):
            return NotImplemented
        g = math.gcd(self.kernel, other.kernel)
        return SquareClass(self.sign * other.sign, (self.kernel // g) * (other.kernel // g))

    def is_identity(self) -> bool:
        return self.sign == 1 and self.kernel == 1


IDENTITY = SquareClass(1, 1)


def class_of(n: int, *, budget: int | None = None) -> SquareClass:
    """The square class of a nonzero integer."""
    if n == 0:
        raise ValueError("0 has no square class")
    s = squarefree_part(n, budget=budget)
    return SquareClass(1 if s > 0 else -1, abs(s))


@dataclass(frozen=True)
class SquareClassSubgroup:
    """The subgroup of Q*/(Q*)^2 generated by a finite list of classes."""

    generators: tuple[SquareClass, ...]
    basis: tuple[SquareClass, ...]
    order: int
    _primes: tuple[int, ...] = field(repr=False)
    _masks: tuple[int, ...] = field(repr=False)

    def contains(self, c: SquareClass) -> bool:
        mask = _encode(c, self._primes)
        if mask is None:
            return False
        return _reduce(mask, self._masks) == 0

    @property
    def rank(self) -> int:
        return len(self.basis)


def _encode(c: SquareClass, primes: tuple[int, ...]) -> int | None:
    """GF(2) coordinate mask of c, or None if c needs a prime outside `primes`."""
    mask = 1 if c.sign < 0 else 0
    rest = c.kernel
    for i, p in enumerate(primes):
        if rest % p == 0:
            mask |= 1 << (i + 1)
            rest //= p
    if rest != 1:
        return None
    return mask


def _reduce(mask: int, echelon: tuple[int, ...]) -> int:
    for row in echelon:
        lead = 1 << (row.bit_length() - 1)
        if mask & lead:
            mask ^= row
    return mask


def span(generators: list[SquareClass] | tuple[SquareClass, ...],
         *, budget: int | None = None) -> SquareClassSubgroup:
    """The subgroup generated by the given classes, with an echelon basis."""
    gens = tuple(generators)
    primes = tuple(sorted({p for g in gens for p in factor(g.kernel, budget=budget).primes()}))
    echelon: list[int] = []
    basis: list[SquareClass] = []
    for g in gens:
        mask = _encode(g, primes)
        assert mask is not None
        residue = _reduce(mask, tuple(echelon))
        if residue:
            echelon.append(residue)
            echelon.sort(key=int.bit_length, reverse=True)
            basis.append(g)
    return SquareClassSubgroup(
        generators=gens,
        basis=tuple(basis),
        order=1 << len(echelon),
        _primes=primes,
        _masks=tuple(echelon),
    )


def subgroup_order(generators: list[SquareClass] | tuple[SquareClass, ...],
                   *, budget: int | None = None) -> tuple[int, tuple[SquareClass, ...]]:
    """Order of the generated subgroup together with an independent basis."""
    sub = span(generators, budget=budget)
    return sub.order, sub.basis
