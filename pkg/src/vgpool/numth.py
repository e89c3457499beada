"""Exact number-theoretic functions behind the theoretical degree laws.

Everything here runs in exact integer or rational arithmetic; floating
point appears only in the leading-term ratio helper used by the identity
checks.
"""

from fractions import Fraction

from .errors import InvalidArgumentError

K_RIGHT_MODES = ("as-written", "per-step")


def _factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine for the sizes used here."""
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    if n < 1:
        raise InvalidArgumentError("n must be a positive integer")
    divs = [1]
    for p, e in _factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    """Mobius function: 0 for squareful n, else (-1)^(number of prime factors)."""
    if n < 1:
        raise InvalidArgumentError("mobius is defined for positive integers only")
    if n == 1:
        return 1
    factors = _factorize(n)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def deg_arith(n: int) -> int:
    """Mobius-inverted degree term: sum over d | n of mu(d) * 2^(n/d).

    Exact (Python integers), so arbitrarily large n is fine.
    """
    if n < 1:
        raise InvalidArgumentError("n must be a positive integer")
    return sum(mobius(d) * 2 ** (n // d) for d in divisors(n))


def check_divisor_sum(n: int) -> bool:
    """True iff sum over d | n of deg_arith(d) equals 2^n exactly."""
    if n < 1:
        raise InvalidArgumentError("n must be a positive integer")
    return sum(deg_arith(d) for d in divisors(n)) == 2**n


def k_right(n: int, mode: str = "as-written") -> Fraction:
    """Averaged right-degree term, in exact rational arithmetic.

    Two readings are exposed because the printed formula's inner sum does
    not involve the summation index:

    * "as-written": sum_{k=1..n} (1/n) * sum_{d|n} mu(d) 2^(n/d), which
      collapses to deg_arith(n);
    * "per-step": sum_{k=1..n} (1/k) * sum_{d|k} mu(d) 2^(k/d), the
      k-dependent reading.
    """
    if n < 1:
        raise InvalidArgumentError("n must be a positive integer")
    if mode == "as-written":
        inner = deg_arith(n)
        return sum((Fraction(1, n) * inner for _ in range(n)), Fraction(0))
    if mode == "per-step":
        return sum((Fraction(deg_arith(k), k) for k in range(1, n + 1)), Fraction(0))
    raise InvalidArgumentError(f"mode must be one of {K_RIGHT_MODES}, got {mode!r}")


def k_left(n: int, k0: int) -> int:
    """Left-degree recursion K(n) = 2*K(n-1) + 1 with K(0) = k0, exact."""
    if n < 0:
        raise InvalidArgumentError("n must be non-negative")
    if k0 < 1:
        raise InvalidArgumentError("k0 must be a positive integer")
    value = k0
    for _ in range(n):
        value = 2 * value + 1
    return value


def k_left_closed_form(n: int, k0: int) -> int:
    """Closed form (k0 + 1) * 2^n - 1; must agree with k_left exactly."""
    if n < 0:
        raise InvalidArgumentError("n must be non-negative")
    return (k0 + 1) * 2**n - 1
