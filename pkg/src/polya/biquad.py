"""Bi-quadratic fields Q(sqrt(m), sqrt(n)): ramification, unit cohomology,
and the Polya group.

For a totally real field the order of H^1(G, O*) is computed from six square
classes: the three subfield kernels and the three a-values of their
fundamental units.  H^1 equals that span H unless 2 is totally ramified and
every subfield contains an element of norm 2 or -2, in which case the index
doubles.  The Polya group order is then prod(e_l) / |H^1| by the exact
sequence 1 -> H^1 -> sum Z/e_l -> Po -> 1.

leriche_classify is the independent route: it never touches H^1 and decides
composita of two quadratic Polya fields by the classical composite rules.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import factor, is_prime, squarefree_part
from .quadratic import (
    NOT_POLYA,
    POLYA,
    a_value,
    fundamental_unit,
    norm_equation,
    zantema_classify,
)
from .sqclass import SquareClass, class_of, subgroup_order

OUTSIDE_PROPOSITION = "OutsideProposition"


def subfields(m: int, n: int) -> tuple[int, int, int]:
    """The three quadratic kernels (m, n, squarefree_part(mn)) of Q(sqrt(m), sqrt(n))."""
    for v in (m, n):
        if v in (0, 1):
            raise ValueError("kernels must be squarefree integers other than 0 and 1")
        if squarefree_part(v) != v:
            raise ValueError(f"{v} is not squarefree")
    third = squarefree_part(m * n)
    if third == 1:
        raise ValueError("m and n must generate distinct quadratic fields")
    return m, n, third


@dataclass(frozen=True)
class BiquadraticField:
    """Q(sqrt(m), sqrt(n)), with its three subfield kernels sorted ascending."""

    m: int
    n: int
    delta1: int
    delta2: int
    delta3: int

    def __post_init__(self) -> None:
        if tuple(sorted(subfields(self.m, self.n))) != self.deltas:
            raise ValueError("kernels do not match m and n")

    @property
    def deltas(self) -> tuple[int, int, int]:
        return (self.delta1, self.delta2, self.delta3)

    @property
    def totally_real(self) -> bool:
        return self.m > 0 and self.n > 0


def biquadratic_field(m: int, n: int) -> BiquadraticField:
    d1, d2, d3 = sorted(subfields(m, n))
    return BiquadraticField(m, n, d1, d2, d3)


@dataclass(frozen=True)
class RamificationProfile:
    """Ramification indices (prime, e) of the ramified rational primes, ascending."""

    entries: tuple[tuple[int, int], ...]

    @property
    def mapping(self) -> dict[int, int]:
        return dict(self.entries)

    @property
    def product(self) -> int:
        out = 1
        for _, e in self.entries:
            out *= e
        return out

    @property
    def e2(self) -> int:
        return self.mapping.get(2, 1)


def ramification(field: BiquadraticField) -> RamificationProfile:
    """Ramified primes of the degree-4 field with their indices.

    Every odd prime dividing a kernel ramifies with e = 2.  The prime 2
    ramifies iff some kernel is 2 or 3 mod 4, totally (e = 4) iff no kernel
    is 1 mod 4: one 2-unramified quadratic subfield caps the inertia at 2.
    """
    deltas = field.deltas
    entries: list[tuple[int, int]] = []
    if any(d % 4 != 1 for d in deltas):
        entries.append((2, 4 if all(d % 4 != 1 for d in deltas) else 2))
    odd = sorted({p for d in deltas for p in factor(abs(d)).primes()} - {2})
    entries.extend((p, 2) for p in odd)
    return RamificationProfile(tuple(sorted(entries)))


def h_generators(field: BiquadraticField) -> tuple[SquareClass, ...]:
    """The six generators of H: [delta_i] and [a_i] for the three kernels."""
    if not field.totally_real:
        raise ValueError("H generators require a totally real field")
    deltas = field.deltas
    return tuple([class_of(d) for d in deltas] + [a_value(d) for d in deltas])


def _has_norm_pm2(d: int, budget: int | None) -> bool:
    return any(norm_equation(d, c, budget=budget) is not None for c in (2, -2))


def h1_order(field: BiquadraticField, *, normeq_budget: int | None = None
             ) -> tuple[int, int, int]:
    """(|H|, index factor, |H^1|) for a totally real bi-quadratic field.

    The index factor is 2 exactly when 2 is totally ramified and each of the
    three subfields contains an element of norm 2 or -2.
    """
    h, _ = subgroup_order(h_generators(field))
    index = 1
    if ramification(field).e2 == 4:
        if all(_has_norm_pm2(d, normeq_budget) for d in field.deltas):
            index = 2
    return h, index, h * index


@dataclass(frozen=True)
class PolyaReport:
    """Every quantity of the Polya group computation, with exactness enforced."""

    field: BiquadraticField
    profile: RamificationProfile
    h_generators: tuple[SquareClass, ...]
    h_order: int
    index_factor: int
    h1_order: int
    po_order: int
    po_structure: str
    unit_norms: tuple[int, int, int]

    def __post_init__(self) -> None:
        if self.h1_order != self.h_order * self.index_factor:
            raise ValueError("index bookkeeping violated")
        if self.po_order * self.h1_order != self.profile.product:
            raise ValueError("exact sequence arithmetic violated")

    @property
    def polya(self) -> bool:
        return self.po_order == 1


def polya_report(field: BiquadraticField, *, normeq_budget: int | None = None
                 ) -> PolyaReport:
    """Full Polya computation for a totally real bi-quadratic field.

    The quotient of sum Z/e_l by H^1 has exponent 2 whenever e_2 <= 2, so the
    structure is elementary abelian of rank log2(po_order); when 2 is totally
    ramified the order does not determine the structure and only the order is
    reported.
    """
    if not field.totally_real:
        raise ValueError("Polya reports cover totally real fields only")
    profile = ramification(field)
    gens = h_generators(field)
    h, index, h1 = h1_order(field, normeq_budget=normeq_budget)
    po = profile.product // h1
    if profile.e2 <= 2:
        rank = po.bit_length() - 1
        structure = "trivial" if po == 1 else ("Z/2" if po == 2 else f"(Z/2)^{rank}")
    else:
        structure = "order-only"
    norms = tuple(fundamental_unit(d).norm for d in field.deltas)
    return PolyaReport(field, profile, gens, h, index, h1, po, structure, norms)


@dataclass(frozen=True)
class LericheVerdict:
    """Composite classification of Q(sqrt(m), sqrt(n)) with the rule that fired."""

    m: int
    n: int
    verdict: str
    rule: str


def _polya_kernels(deltas: tuple[int, int, int]) -> list[int]:
    return [d for d in deltas if zantema_classify(d).polya]


def _even_pattern(deltas: tuple[int, int, int]) -> tuple[int, int] | None:
    """Detect the Q(sqrt(p), sqrt(2q)) shape: returns (p, q) or None.

    Needs a totally real field whose kernel set is {p, 2q, sf(2pq)} with p an
    odd prime = 3 mod 4 and q an odd prime (q = p collapses to Q(sqrt 2, sqrt p)).
    """
    odd = [d for d in deltas if d % 2]
    even = [d for d in deltas if d % 2 == 0]
    if len(odd) != 1 or len(even) != 2:
        return None
    p = odd[0]
    if p < 0 or not is_prime(p) or p % 4 != 3:
        return None
    for e in even:
        q = e // 2
        if q > 1 and q % 2 == 1 and is_prime(q):
            other = squarefree_part(e * p)
            if sorted((e, other)) == sorted(even):
                return p, q
    return None


def leriche_classify(m: int, n: int) -> LericheVerdict:
    """Classify the compositum of two quadratic Polya fields, without H^1 spans.

    Composite rules: such a compositum is Polya except for the imaginary
    families Q(sqrt(-2), sqrt(p)) with p = 3 mod 4 prime and Q(sqrt(-1),
    sqrt(2q)) with q an odd prime, and except when 2 is totally ramified and
    some subfield lacks an element of norm 2 or -2 (principality of the prime
    over 2 fails somewhere, so it fails in the compositum).  In the totally
    ramified Q(sqrt(p), sqrt(2q)) shape a congruence necessity screens first:
    a Polya such field must have p = 7 mod 8 with q = +-1 mod 8, or p = 3
    mod 8 with q = 1 or 3 mod 8.  Fields where fewer than two of the three
    kernels are Polya are outside the rules' scope.
    """
    field = biquadratic_field(m, n)
    deltas = field.deltas
    if len(_polya_kernels(deltas)) < 2:
        return LericheVerdict(m, n, OUTSIDE_PROPOSITION,
                              "fewer than two Polya quadratic subfields")
    if -2 in deltas and any(d > 0 and d % 4 == 3 and is_prime(d) for d in deltas):
        p = next(d for d in deltas if d > 0 and d % 4 == 3 and is_prime(d))
        return LericheVerdict(m, n, NOT_POLYA, f"exception 1: Q(sqrt(-2), sqrt({p}))")
    if -1 in deltas:
        for d in deltas:
            if d > 0 and d % 2 == 0 and d // 2 > 1 and is_prime(d // 2):
                return LericheVerdict(m, n, NOT_POLYA,
                                      f"exception 2: Q(sqrt(-1), sqrt(2*{d // 2}))")
    if field.totally_real and all(d % 4 != 1 for d in deltas):
        pattern = _even_pattern(deltas)
        if pattern is not None:
            p, q = pattern
            ok = (p % 8 == 7 and q % 8 in (1, 7)) or (p % 8 == 3 and q % 8 in (1, 3))
            if not ok:
                return LericheVerdict(m, n, NOT_POLYA,
                                      f"necessary congruences fail for p={p}, q={q}")
        for d in deltas:
            if not _has_norm_pm2(d, None):
                return LericheVerdict(m, n, NOT_POLYA,
                                      f"no element of norm +-2 in Q(sqrt({d}))")
        return LericheVerdict(m, n, POLYA, "composite rule: ramified 2 stays principal")
    return LericheVerdict(m, n, POLYA, "composite rule: no exception applies")
