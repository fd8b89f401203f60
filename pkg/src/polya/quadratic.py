"""Quadratic fields Q(sqrt(d)): continued fractions, fundamental units,
norm equations, and the Polya property.

Conventions.  d is a squarefree integer, d not in {0, 1}.  The ring of
integers is Z[(1+sqrt(d))/2] when d = 1 mod 4 and Z[sqrt(d)] otherwise, so
elements are (x + y*sqrt(d))/denom with denom in {1, 2}, and denom = 2 forces
x = y (mod 2) and d = 1 (mod 4).

The central computational trick: for a fundamental unit u = (z + t*sqrt(d))/denom
of norm +1, the integers z - denom and z + denom split, up to their gcd, as
eta * square and epsilon * square with epsilon * eta = d.  That factorization
decides every norm equation N(alpha) = +-l at ramified primes l without ever
factoring a large integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .arith import factor, icbrt, is_prime, is_square, jacobi, squarefree_part
from .sqclass import IDENTITY, SquareClass, class_of

DEFAULT_NORMEQ_BUDGET = 2_000_000


class UndecidedError(RuntimeError):
    """A norm equation whose search space exceeds the allotted budget."""

    def __init__(self, d: int, c: int, required: float, budget: int) -> None:
        super().__init__(
            f"norm equation x^2 - {d}*y^2 = {c} needs a scan of about "
            f"exp({required:.1f}) candidates, over the budget of {budget}"
        )
        self.d = d
        self.c = c
        self.required = required
        self.budget = budget


def _require_radicand(d: int) -> None:
    if d in (0, 1):
        raise ValueError("d must be a squarefree integer other than 0 and 1")
    if squarefree_part(d) != d:
        raise ValueError(f"{d} is not squarefree")


@dataclass(frozen=True)
class QuadraticField:
    """Q(sqrt(d)) for squarefree d."""

    d: int

    def __post_init__(self) -> None:
        _require_radicand(self.d)

    @property
    def is_real(self) -> bool:
        return self.d > 0

    @property
    def discriminant(self) -> int:
        return self.d if self.d % 4 == 1 else 4 * self.d

    def ramified_primes(self) -> tuple[int, ...]:
        return ramified_primes(self.d)


def ramified_primes(d: int) -> tuple[int, ...]:
    """Primes dividing the field discriminant of Q(sqrt(d)), ascending."""
    _require_radicand(d)
    odd = [p for p in factor(abs(d)).primes() if p != 2]
    out = ([2] if d % 4 != 1 else []) + odd
    return tuple(sorted(out))


@dataclass(frozen=True)
class ContinuedFraction:
    """Continued fraction of sqrt(d): preperiod (a0,) then the periodic part.

    q_values holds the denominators of the complete quotients (m + sqrt(d))/q
    over one full period; the last entry is always 1.
    """

    d: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    q_values: tuple[int, ...]

    @property
    def period_length(self) -> int:
        return len(self.period)


def cf_expand(d: int) -> ContinuedFraction:
    """Continued fraction expansion of sqrt(d) for any nonsquare d > 1."""
    if d < 2 or is_square(d):
        raise ValueError("cf_expand needs a nonsquare integer d > 1")
    a0 = math.isqrt(d)
    m, q, a = 0, 1, a0
    period: list[int] = []
    q_values: list[int] = []
    while True:
        m = q * a - m
        q = (d - m * m) // q
        a = (a0 + m) // q
        period.append(a)
        q_values.append(q)
        if q == 1:
            break
    return ContinuedFraction(d, (a0,), tuple(period), tuple(q_values))


@dataclass(frozen=True)
class FundamentalUnit:
    """The fundamental unit (z + t*sqrt(d))/denom > 1 of the real field Q(sqrt(d))."""

    d: int
    z: int
    t: int
    denom: int
    norm: int

    def __post_init__(self) -> None:
        if self.z < 1 or self.t < 1 or self.denom not in (1, 2) or self.norm not in (-1, 1):
            raise ValueError("malformed unit")
        if self.z * self.z - self.d * self.t * self.t != self.norm * self.denom * self.denom:
            raise ValueError("unit fails its norm equation")
        if self.denom == 2 and (self.d % 4 != 1 or self.z % 2 != self.t % 2):
            raise ValueError("half-integral unit outside the ring of integers")

    @property
    def log_upper(self) -> float:
        """An upper bound on log(unit), tight to within about 1/z."""
        return math.log(2 * self.z + 2) - math.log(self.denom)


def _pell_min(d: int) -> tuple[int, int, int]:
    """Least (x, y, nu) with x, y >= 1 and x^2 - d*y^2 = nu in {+1, -1}."""
    cf = cf_expand(d)
    a0 = cf.preperiod[0]
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    for a in cf.period[:-1]:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    nu = -1 if cf.period_length % 2 else 1
    return p, q, nu


@lru_cache(maxsize=None)
def fundamental_unit(d: int) -> FundamentalUnit:
    """Fundamental unit of Q(sqrt(d)), d squarefree > 1.

    Computed from the continued fraction of sqrt(d); when d = 5 (mod 8) the
    minimal solution over Z[sqrt(d)] may be the cube of a half-integral unit,
    which is recovered by an exact cube root.  (d = 1 mod 8 admits no
    half-integral unit: a^2 - d*b^2 = 0 mod 8 can never be +-4.)
    """
    _require_radicand(d)
    if d < 2:
        raise ValueError("fundamental units require a real field, d > 1")
    x, y, nu = _pell_min(d)
    if d % 8 == 5:
        # (a + b*sqrt(d))/2 cubed equals x + y*sqrt(d) iff a^3 - 3*nu*a = 2*x.
        target = 2 * x
        guess = icbrt(target)
        for a in range(max(1, guess - 2), guess + 3):
            if a * a * a - 3 * nu * a == target and a % 2 == 1:
                if 2 * y % (a * a - nu) == 0:
                    b = 2 * y // (a * a - nu)
                    if b >= 1 and b % 2 == 1 and a * a - d * b * b == 4 * nu:
                        return FundamentalUnit(d, a, b, 2, nu)
    return FundamentalUnit(d, x, y, 1, nu)


@dataclass(frozen=True)
class UnitSplit:
    """Split of a norm +1 fundamental unit u = (z + t*sqrt(d))/denom:

        z + denom = g * m^2 * epsilon,   z - denom = g * n^2 * eta,

    with g = gcd(z - denom, z + denom), epsilon * eta = d, m * n = t / g,
    and m^2 * epsilon - n^2 * eta = 2 * denom / g.
    """

    d: int
    unit: FundamentalUnit
    g: int
    m: int
    n: int
    epsilon: int
    eta: int

    def __post_init__(self) -> None:
        u = self.unit
        if u.norm != 1:
            raise ValueError("unit split needs norm +1")
        if self.epsilon * self.eta != self.d:
            raise ValueError("epsilon * eta must equal d")
        if self.g * self.m * self.m * self.epsilon != u.z + u.denom:
            raise ValueError("epsilon side fails")
        if self.g * self.n * self.n * self.eta != u.z - u.denom:
            raise ValueError("eta side fails")


def epsilon_decomposition(d: int) -> UnitSplit:
    """Split the norm +1 fundamental unit of Q(sqrt(d)) as documented on UnitSplit.

    Raises ValueError when the fundamental unit has norm -1 (no split exists).
    """
    u = fundamental_unit(d)
    if u.norm != 1:
        raise ValueError(f"fundamental unit of Q(sqrt({d})) has norm -1; no epsilon split")
    z, delta = u.z, u.denom
    g = math.gcd(z - delta, z + delta)
    big, small = (z + delta) // g, (z - delta) // g
    epsilon = 1
    for p in factor(d).primes():
        if big % p == 0:
            epsilon *= p
    eta = d // epsilon
    m = math.isqrt(big // epsilon)
    n = math.isqrt(small // eta)
    split = UnitSplit(d, u, g, m, n, epsilon, eta)
    assert m * n * g == u.t and math.gcd(m, n) == 1
    return split


def a_value(d: int) -> SquareClass:
    """Square class of N(u + 1) for the fundamental unit u of Q(sqrt(d)).

    [1] when N(u) = -1.  Otherwise N(u + 1) = 2(z + denom)/denom, which the
    epsilon split reduces to [2 * g * epsilon] (denom 1) or [g * epsilon]
    (denom 2) without factoring z + denom.
    """
    u = fundamental_unit(d)
    if u.norm == -1:
        return IDENTITY
    s = epsilon_decomposition(d)
    base = s.g * s.epsilon
    if u.denom == 1:
        base *= 2
    return class_of(base)


@dataclass(frozen=True)
class NormEquationSolution:
    """alpha = (x + y*sqrt(d))/denom in O_K with N(alpha) = c."""

    d: int
    c: int
    x: int
    y: int
    denom: int

    def __post_init__(self) -> None:
        if self.denom not in (1, 2):
            raise ValueError("denom must be 1 or 2")
        if self.x * self.x - self.d * self.y * self.y != self.c * self.denom * self.denom:
            raise ValueError("claimed solution fails the norm equation")
        if self.denom == 2 and (self.d % 4 != 1 or self.x % 2 != self.y % 2):
            raise ValueError("half-integral solution outside the ring of integers")


def _solution(d: int, c: int, x: int, y: int, denom: int) -> NormEquationSolution:
    x, y = abs(x), abs(y)
    if denom == 2 and x % 2 == 0 and y % 2 == 0:
        x, y, denom = x // 2, y // 2, 1
    return NormEquationSolution(d, c, x, y, denom)


def _ramified_decider(d: int, c: int) -> NormEquationSolution | None:
    """Decide N(alpha) = c for real d and prime |c| dividing disc(Q(sqrt(d))).

    Complete: always returns a verified solution or a definitive None.
    """
    ell = abs(c)
    tau = 1 if c > 0 else -1
    if ell == d:
        if tau == -1:
            return _solution(d, c, 0, 1, 1)
        u = fundamental_unit(d)
        if u.norm == -1:
            return _solution(d, c, d * u.t, u.z, u.denom)
        return None
    u = fundamental_unit(d)
    if u.norm == -1:
        return None
    s = epsilon_decomposition(d)
    delta, g = u.denom, s.g
    side = s.epsilon if tau == 1 else s.eta
    if squarefree_part(2 * delta * g * side * ell) != 1:
        return None
    num, den = ell * (u.z + tau * delta), 2 * delta
    if num % den == 0 and is_square(num // den):
        x = math.isqrt(num // den)
        y = ell * u.t // (2 * delta * x)
        return _solution(d, c, x, y, 1)
    big = 4 * num // den
    x = math.isqrt(big)
    y = 2 * ell * u.t // (delta * x)
    return _solution(d, c, x, y, 2)


def _scan_imaginary(d: int, c: int) -> NormEquationSolution | None:
    if c < 0:
        return None
    denoms = (1, 2) if d % 4 == 1 else (1,)
    for denom in denoms:
        target = c * denom * denom
        y = 0
        while -d * y * y <= target:
            rest = target + d * y * y
            if is_square(rest):
                x = math.isqrt(rest)
                if denom == 1 or x % 2 == y % 2:
                    return _solution(d, c, x, y, denom)
            y += 1
    return None


_SIEVE_MODULI = (64, 63, 65)


@lru_cache(maxsize=64)
def _square_table(mod: int) -> frozenset[int]:
    return frozenset((i * i) % mod for i in range(mod))


def _times_unit(d: int, c: int, x: int, y: int, denom: int) -> NormEquationSolution:
    """Multiply (x + y*sqrt(d))/denom by the fundamental unit; norm becomes c."""
    u = fundamental_unit(d)
    nx = x * u.z + y * u.t * d
    ny = x * u.t + y * u.z
    nd = denom * u.denom
    if nd == 4:
        # A product of two half-integral elements is integral, so both
        # coordinates are even and the denominator drops back to 2.
        nx, ny, nd = nx // 2, ny // 2, 2
    return _solution(d, c, nx, ny, nd)


def _scan_real(d: int, c: int, budget: int) -> NormEquationSolution | None:
    """Bounded search over y up to ceil(sqrt(|c|*U/d)) + 1, U the unit value.

    Any element of norm +-c can be pushed into that window by unit powers, so
    scanning both signs is complete: a hit with norm -c only matters when the
    fundamental unit has norm -1, and is then converted by one multiplication.
    Raises UndecidedError when the window exceeds the budget.
    """
    u = fundamental_unit(d)
    half = d % 4 == 1
    log_ymax = 0.5 * (math.log(abs(c)) + u.log_upper - math.log(d))
    if half:
        log_ymax += math.log(2)  # numerator coordinate of half-integral elements
    if log_ymax > math.log(budget):
        raise UndecidedError(d, c, log_ymax, budget)
    y_max = math.ceil(math.exp(log_ymax)) + 1
    target_c = 4 * c if half else c
    flip = u.norm == -1
    squares = [_square_table(mod) for mod in _SIEVE_MODULI]
    for y in range(y_max + 1):
        base = d * y * y
        for sign in (1, -1):
            if sign == -1 and not flip:
                break
            rest = sign * target_c + base
            if rest < 0:
                continue
            if any((rest % mod) not in table for mod, table in zip(_SIEVE_MODULI, squares)):
                continue
            if not is_square(rest):
                continue
            x = math.isqrt(rest)
            denom = 2 if half else 1
            if half and x % 2 != y % 2:
                continue
            if sign == 1:
                return _solution(d, c, x, y, denom)
            return _times_unit(d, c, x, y, denom)
    return None


def norm_equation(d: int, c: int, *, budget: int | None = None) -> NormEquationSolution | None:
    """An integral element of Q(sqrt(d)) of norm c, or None if none exists.

    Fast complete deciders handle |c| = 1, prime |c| ramified in the field,
    and locally obstructed c.  Anything else falls back to a bounded scan;
    if the bound implied by the fundamental unit exceeds the budget, raises
    UndecidedError rather than guessing.
    """
    _require_radicand(d)
    if c == 0:
        raise ValueError("c must be nonzero")
    if budget is None:
        budget = DEFAULT_NORMEQ_BUDGET
    if d < 0:
        return _scan_imaginary(d, c)
    if c == 1:
        return _solution(d, c, 1, 0, 1)
    u = fundamental_unit(d)
    if c == -1:
        return _solution(d, c, u.z, u.t, u.denom) if u.norm == -1 else None
    # Local obstructions at odd ramified primes not dividing c.
    for p in factor(d).primes():
        if p != 2 and c % p != 0 and jacobi(c, p) == -1:
            return None
    if is_prime(abs(c)):
        ell = abs(c)
        if d % ell == 0 or (ell == 2 and d % 4 == 3):
            return _ramified_decider(d, c)
        if ell == 2 and d % 8 == 5:
            return None  # 2 is inert
        if ell % 2 == 1 and jacobi(d, ell) == -1:
            return None  # ell is inert
    return _scan_real(d, c, budget)


POLYA = "Polya"
NOT_POLYA = "NotPolya"
UNDECIDED = "Undecided"


@dataclass(frozen=True)
class ZantemaVerdict:
    """Outcome of Zantema's five-case classification of quadratic Polya fields."""

    d: int
    polya: bool
    case: str | None

    @property
    def verdict(self) -> str:
        return POLYA if self.polya else NOT_POLYA


def zantema_classify(d: int) -> ZantemaVerdict:
    """Classify Q(sqrt(d)) as Polya or not by Zantema's five cases:

    (1) d = -1, -2, 2; (2) d = -p with p = 3 mod 4 prime; (3) d = p an odd
    prime; (4) d = 2p with p = 3 mod 4, or p = 1 mod 4 and unit norm +1;
    (5) d = pq, odd primes, p = q = 3 mod 4, or p = q = 1 mod 4 and unit
    norm +1.  Everything else is not Polya.
    """
    _require_radicand(d)
    if d in (-1, -2, 2):
        return ZantemaVerdict(d, True, "case 1")
    if d < 0:
        if is_prime(-d) and (-d) % 4 == 3:
            return ZantemaVerdict(d, True, "case 2")
        return ZantemaVerdict(d, False, None)
    if is_prime(d):
        return ZantemaVerdict(d, True, "case 3")
    primes = factor(d).primes()
    if len(primes) == 2:
        if primes[0] == 2:
            p = primes[1]
            if p % 4 == 3 or fundamental_unit(d).norm == 1:
                return ZantemaVerdict(d, True, "case 4")
            return ZantemaVerdict(d, False, None)
        p, q = primes
        if p % 4 == 3 and q % 4 == 3:
            return ZantemaVerdict(d, True, "case 5")
        if p % 4 == 1 and q % 4 == 1 and fundamental_unit(d).norm == 1:
            return ZantemaVerdict(d, True, "case 5")
    return ZantemaVerdict(d, False, None)


def quadratic_polya_oracle(d: int, *, budget: int | None = None) -> str:
    """Polya test via principality of every ramified prime of Q(sqrt(d)).

    A quadratic field is Polya iff each ramified prime ideal is principal,
    i.e. norm_equation(d, l) or norm_equation(d, -l) has a solution for every
    ramified l.  Independent of zantema_classify; Undecided only when a probe
    exhausts its budget without a definitive miss elsewhere.
    """
    _require_radicand(d)
    undecided = False
    for ell in ramified_primes(d):
        found = False
        probe_undecided = False
        for c in (ell, -ell):
            try:
                if norm_equation(d, c, budget=budget) is not None:
                    found = True
                    break
            except UndecidedError:
                probe_undecided = True
        if found:
            continue
        if probe_undecided:
            undecided = True
            continue
        return NOT_POLYA
    return UNDECIDED if undecided else POLYA


@dataclass(frozen=True)
class DirichletReport:
    """Audit of the norm -1 criterion for Q(sqrt(rs)), r and s distinct primes."""

    r: int
    s: int
    applies: bool
    norm: int
    consistent: bool


def dirichlet_norm_criterion(r: int, s: int) -> DirichletReport:
    """Check the classical criterion: for primes r = s = 1 (mod 4) with
    (r/s) = -1, the fundamental unit of Q(sqrt(rs)) has norm -1.

    The congruence restriction is required: norm -1 forces -1 to be a square
    modulo every odd prime divisor of rs.  The computed norm is reported even
    when the criterion does not apply, so the raw claim can be audited.
    """
    if r == s or not (is_prime(r) and is_prime(s)):
        raise ValueError("r and s must be distinct primes")
    applies = r % 4 == 1 and s % 4 == 1 and jacobi(r, s) == -1
    norm = fundamental_unit(r * s).norm
    consistent = (not applies) or norm == -1
    return DirichletReport(r, s, applies, norm, consistent)
