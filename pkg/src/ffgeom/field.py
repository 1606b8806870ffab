"""Arithmetic in the prime field F_p for odd primes p.

Geometry code elsewhere in the package works on plain ``int`` residues for
speed; :class:`FieldElement` is the checked, operator-friendly wrapper used at
API boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import ZeroInverseError

MAX_MODULUS = 2**31 - 1
EXHAUSTIVE_SQRT_LIMIT = 10_000


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.4e14."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17)
    for sp in small:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=64)
def _sqrt_table(p: int) -> dict[int, int]:
    # i and p - i square to the same value; the first one seen is the smaller.
    table: dict[int, int] = {}
    for r in range((p - 1) // 2 + 1):
        table.setdefault(r * r % p, r)
    return table


def _tonelli_shanks(a: int, p: int) -> int | None:
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


@dataclass(frozen=True)
class PrimeField:
    """The field F_p. Construction validates that p is an odd prime below 2^31."""

    p: int

    def __post_init__(self) -> None:
        p = self.p
        if not isinstance(p, int) or isinstance(p, bool):
            raise TypeError(f"modulus must be an int, got {type(p).__name__}")
        if p < 3 or p > MAX_MODULUS or not is_prime(p):
            raise ValueError(f"modulus must be an odd prime in [3, 2^31 - 1], got {p}")

    @property
    def q(self) -> int:
        return self.p

    @property
    def residue_class_mod_4(self) -> int:
        return self.p % 4

    @cached_property
    def sqrt_minus_one(self) -> int | None:
        """Smallest i >= 0 with i^2 = -1, or None when p = 3 mod 4."""
        if self.p % 4 == 3:
            return None
        return self.sqrt(self.p - 1)

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self.p)

    def elements(self) -> range:
        return range(self.p)

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroInverseError(f"0 has no inverse mod {self.p}")
        return pow(x, -1, self.p)

    def sqrt(self, x: int) -> int | None:
        """Canonical (smaller) square root of x, or None if x is a non-residue."""
        x %= self.p
        if self.p < EXHAUSTIVE_SQRT_LIMIT:
            return _sqrt_table(self.p).get(x)
        return _tonelli_shanks(x, self.p)

    def is_square(self, x: int) -> bool:
        return self.sqrt(x) is not None


@dataclass(frozen=True)
class FieldElement:
    value: int
    p: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.p:
            raise ValueError(f"{self.value} is not a canonical residue mod {self.p}")

    def _coerce(self, other: FieldElement | int) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError(f"field mismatch: {self.p} vs {other.p}")
            return other.value
        return other % self.p

    def __add__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement((self.value + self._coerce(other)) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement((self.value - self._coerce(other)) % self.p, self.p)

    def __rsub__(self, other: int) -> FieldElement:
        return FieldElement((other - self.value) % self.p, self.p)

    def __mul__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement(self.value * self._coerce(other) % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self) -> FieldElement:
        return FieldElement(-self.value % self.p, self.p)

    def __truediv__(self, other: FieldElement | int) -> FieldElement:
        return self * fe_inverse(FieldElement(self._coerce(other), self.p))

    def __pow__(self, k: int) -> FieldElement:
        if k < 0:
            return fe_inverse(self) ** (-k)
        return FieldElement(pow(self.value, k, self.p), self.p)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0


def fe_inverse(x: FieldElement) -> FieldElement:
    if x.value == 0:
        raise ZeroInverseError(f"0 has no inverse mod {x.p}")
    return FieldElement(pow(x.value, -1, x.p), x.p)


def fe_sqrt(x: FieldElement) -> FieldElement | None:
    """Smaller square root of ``x``; None signals a quadratic non-residue."""
    r = PrimeField(x.p).sqrt(x.value)
    return None if r is None else FieldElement(r, x.p)


def fe_sqrt_minus_one(F: PrimeField) -> FieldElement | None:
    i = F.sqrt_minus_one
    return None if i is None else FieldElement(i, F.p)
