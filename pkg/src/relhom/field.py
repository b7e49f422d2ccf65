"""Exact arithmetic over a prime field GF(p).

Scalars are plain ints stored as canonical residues in {0, ..., p-1}; a
:class:`PrimeField` instance is the shared context that carries the modulus.
Matrices and chains from different contexts must never be mixed.
"""

from __future__ import annotations


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (moduli are small)."""
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


class PrimeField:
    """Arithmetic context for GF(p).

    The context is read-only after construction apart from an internal
    inverse memo, so it is safe to share across threads.
    """

    __slots__ = ("p", "_inverses")

    def __init__(self, p: int):
        if isinstance(p, bool) or not isinstance(p, int):
            raise TypeError(f"field modulus must be an int, got {type(p).__name__}")
        if not is_prime(p):
            raise ValueError(f"field modulus must be prime, got {p}")
        self.p = p
        self._inverses: dict[int, int] = {1: 1}

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def element(self, n: int) -> int:
        """Canonical residue of an arbitrary integer."""
        return n % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        """Multiplicative inverse of a nonzero residue, memoized per context."""
        if a % self.p == 0:
            raise ZeroDivisionError("zero has no inverse in GF(p)")
        a %= self.p
        cached = self._inverses.get(a)
        if cached is None:
            cached = pow(a, -1, self.p)
            self._inverses[a] = cached
        return cached

    def div(self, a: int, b: int) -> int:
        return (a * self.inv(b)) % self.p
