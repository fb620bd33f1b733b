"""Residue classes, lcm of initial segments and the blocks ``R_n^k``.

Everything here is plain integer arithmetic on Python ints, so ``N`` and
factorial-sized orders never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Optional, Tuple


@dataclass(frozen=True, order=True)
class ResidueClass:
    """The set ``residue + modulus * Z``."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(
                f"residue must lie in [0, {self.modulus}), got {self.residue}"
            )

    def __contains__(self, x: int) -> bool:
        return x % self.modulus == self.residue

    def __str__(self) -> str:
        return f"{self.residue}({self.modulus})"


def lcm_up_to(n: int) -> int:
    """Return lcm(2, 3, ..., n)."""
    if n < 2:
        raise ValueError(f"lcm_up_to needs n >= 2, got {n}")
    return reduce(math.lcm, range(2, n + 1), 1)


def prime_power(m: int) -> Optional[Tuple[int, int]]:
    """Return ``(p, k)`` with ``m == p**k`` and p prime, or None.

    Trial division only; this is meant for m up to ~10**6.
    """
    if m < 2:
        raise ValueError(f"prime_power needs m >= 2, got {m}")
    p = m
    d = 2
    while d * d <= m:
        if m % d == 0:
            p = d
            break
        d += 1
    k = 0
    rest = m
    while rest % p == 0:
        rest //= p
        k += 1
    return (p, k) if rest == 1 else None


def gap_condition(n: int) -> bool:
    """True iff ``n + 1`` does not divide lcm(2..n).

    When it holds, ``n + 1`` is a prime power ``p**k`` and
    lcm(2..n+1) == p * lcm(2..n); both facts are asserted.
    """
    if n < 2:
        raise ValueError(f"gap_condition needs n >= 2, got {n}")
    N = lcm_up_to(n)
    if N % (n + 1) == 0:
        return False
    pk = prime_power(n + 1)
    assert pk is not None, f"{n + 1} does not divide {N} but is no prime power"
    assert lcm_up_to(n + 1) == N * pk[0]
    return True


def classes_disjoint(a: ResidueClass, b: ResidueClass) -> bool:
    """True iff the two residue classes share no integer.

    By CRT, ``r1 + m1 Z`` and ``r2 + m2 Z`` meet iff r1 = r2 mod gcd(m1, m2).
    """
    g = math.gcd(a.modulus, b.modulus)
    return (a.residue - b.residue) % g != 0


def block(n: int, j: int) -> range:
    """The block ``R_n^j = [j*n, (j+1)*n)``."""
    if n < 2:
        raise ValueError(f"block width must be >= 2, got {n}")
    if j < 0:
        raise ValueError(f"block index must be >= 0, got {j}")
    return range(j * n, (j + 1) * n)


@dataclass(frozen=True)
class Parameters:
    """The integers attached to one value of ``n``.

    ``N = lcm(2..n)``. In the prime-power case ``n + 1 = p**k`` the fields
    ``p``, ``k`` and ``M = N // p**(k-1)`` are filled in; otherwise they are
    None and :meth:`require_gap` raises.
    """

    n: int
    N: int
    p: Optional[int] = None
    k: Optional[int] = None
    M: Optional[int] = None

    @classmethod
    def from_n(cls, n: int) -> "Parameters":
        N = lcm_up_to(n)
        if not gap_condition(n):
            return cls(n, N)
        p, k = prime_power(n + 1)
        M = N // p ** (k - 1)
        assert M * p ** (k - 1) == N and M % p != 0
        return cls(n, N, p, k, M)

    @property
    def has_gap(self) -> bool:
        return self.p is not None

    def require_gap(self) -> "Parameters":
        if not self.has_gap:
            raise GapConditionError(self.n, self.N)
        return self

    @property
    def pk(self) -> int:
        self.require_gap()
        return self.p ** self.k

    @property
    def degree(self) -> int:
        """Degree ``N * p`` of the prime-power-step picture."""
        self.require_gap()
        return self.N * self.p


class GapConditionError(ValueError):
    """Raised when prime-power machinery is requested but n + 1 divides N."""

    def __init__(self, n: int, N: int):
        self.n = n
        self.N = N
        super().__init__(
            f"n={n}: {n + 1} divides lcm(2..{n}) = {N}, so n+1 adds no new "
            "prime power and p, k, M are undefined"
        )
