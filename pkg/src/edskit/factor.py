"""Integer factorization with explicit partiality, radicals and smoothness.

Partial factorizations are a first-class outcome: every functional that
depends on completeness returns a certainty tag so downstream theorem
checkers can downgrade to "inconclusive" instead of silently trusting a
lower bound.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, List, Tuple

from .intmath import is_prime, primes_up_to, valuation

CERTAIN = "certain"
LOWER_BOUND = "lower_bound"


@dataclass(frozen=True)
class Effort:
    """Budget for a factorization attempt."""

    trial_bound: int = 10 ** 6
    rho_iterations: int = 10 ** 7
    wall_clock: float = 60.0


DEFAULT_EFFORT = Effort()


@dataclass
class Factorization:
    """Multiset of prime powers plus an optional unfactored cofactor.

    status is "complete" when cofactor == 1; otherwise "partial" and the
    cofactor is composite (or of unestablished primality).
    """

    n: int
    factors: List[Tuple[int, int]] = field(default_factory=list)
    cofactor: int = 1

    @property
    def status(self) -> str:
        return "complete" if self.cofactor == 1 else "partial"

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def product(self) -> int:
        out = self.cofactor
        for p, e in self.factors:
            out *= p ** e
        return out

    def to_json(self) -> dict:
        return {
            "factors": [[str(p), e] for p, e in self.factors],
            "cofactor": str(self.cofactor),
            "status": self.status,
        }


def _brent_rho(n: int, iteration_cap: int, deadline: float, seed: int = 1) -> int | None:
    """Brent's cycle variant of Pollard rho.  Returns a nontrivial factor or None."""
    if n % 2 == 0:
        return 2
    rng = random.Random(seed ^ n)
    spent = 0
    while spent < iteration_cap and time.monotonic() < deadline:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1 and spent < iteration_cap:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                spent += min(m, r - k)
                g = math.gcd(q, n)
                k += m
            r *= 2
            if time.monotonic() >= deadline:
                break
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                spent += 1
        if 1 < g < n:
            return g
    return None


def factorize(x: int, effort: Effort = DEFAULT_EFFORT) -> Factorization:
    """Trial division to effort.trial_bound, then Pollard-Brent within budget."""
    if x < 1:
        raise ValueError("x must be positive")
    result = Factorization(n=x)
    if x == 1:
        return result
    rest = x
    bound = min(effort.trial_bound, math.isqrt(rest) + 1)
    for p in primes_up_to(bound):
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            result.factors.append((p, e))
    if rest == 1:
        return result
    if rest <= effort.trial_bound * effort.trial_bound or is_prime(rest):
        # Below the square of the trial bound any survivor is prime.
        _merge(result.factors, rest, 1)
        result.factors.sort()
        return result

    deadline = time.monotonic() + effort.wall_clock
    stack = [rest]
    while stack:
        m = stack.pop()
        if is_prime(m):
            _merge(result.factors, m, 1)
            continue
        d = _brent_rho(m, effort.rho_iterations, deadline)
        if d is None:
            result.cofactor *= m
            continue
        stack.append(d)
        stack.append(m // d)
    result.factors.sort()
    return result


def _merge(factors: List[Tuple[int, int]], p: int, e: int) -> None:
    for i, (q, f) in enumerate(factors):
        if q == p:
            factors[i] = (q, f + e)
            return
    factors.append((p, e))


def rad_S_rho(
    x: int,
    S: Iterable[int],
    rho: int,
    effort: Effort = DEFAULT_EFFORT,
) -> Tuple[int, str]:
    """Product of primes p outside S with rho not dividing v_p(x).

    Returns (value, certainty); certainty is "lower_bound" when the
    factorization is partial, since the unfactored cofactor could hide
    further qualifying primes.
    """
    exclude = set(S)
    fac = factorize(x, effort)
    value = 1
    for p, e in fac.factors:
        if p not in exclude and e % rho != 0:
            value *= p
    return value, (CERTAIN if fac.complete else LOWER_BOUND)


def sqf_S(x: int, S: Iterable[int], effort: Effort = DEFAULT_EFFORT) -> Tuple[int, str]:
    """Squarefree part of x outside S (the rho = 2 power radical)."""
    return rad_S_rho(x, S, 2, effort)


def radical(x: int, effort: Effort = DEFAULT_EFFORT) -> Tuple[int, str]:
    """Ordinary radical: product of the distinct primes dividing x."""
    fac = factorize(x, effort)
    value = 1
    for p, _ in fac.factors:
        value *= p
    return value, (CERTAIN if fac.complete else LOWER_BOUND)


def largest_prime_factor(x: int, effort: Effort = DEFAULT_EFFORT) -> Tuple[int, str]:
    """P^+(x), with P^+(1) = 1; a lower bound when factorization is partial."""
    if x < 1:
        raise ValueError("x must be positive")
    if x == 1:
        return 1, CERTAIN
    fac = factorize(x, effort)
    best = max((p for p, _ in fac.factors), default=1)
    return best, (CERTAIN if fac.complete else LOWER_BOUND)


def is_B_smooth(x: int, B) -> bool:
    """True iff every prime factor of x is <= B.

    Decided by trial division up to B, which is always conclusive: after
    removing all prime factors <= B the residue is 1 exactly when x is
    smooth.
    """
    if x < 1:
        raise ValueError("x must be positive")
    for p in primes_up_to(int(B)):
        while x % p == 0:
            x //= p
        if x == 1:
            return True
    return x == 1
