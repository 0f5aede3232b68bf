"""Arithmetic in the binary fields GF(2^q), q in {16, 32, 64}.

Elements are plain Python ints (or numpy uint64 in bulk): bit i holds the
coefficient of x^i. Addition is XOR. Multiplication is carryless multiply
followed by reduction modulo a fixed irreducible polynomial:

    q = 16:  x^16 + x^5 + x^3 + x + 1
    q = 32:  x^32 + x^7 + x^3 + x^2 + 1
    q = 64:  x^64 + x^4 + x^3 + x + 1

All three come from the standard low-weight tables. The width for a solver
instance is chosen by field_for_instance(n), the smallest supported q with
2^q >= 12 * n^6; at that size the rank-based connectivity answers are correct
for all pairs with probability at least 1 - 1/n.
"""

from __future__ import annotations

import numpy as np

SUPPORTED_WIDTHS = (16, 32, 64)

_MODULI = {
    16: (1 << 16) | (1 << 5) | (1 << 3) | (1 << 1) | 1,
    32: (1 << 32) | (1 << 7) | (1 << 3) | (1 << 2) | 1,
    64: (1 << 64) | (1 << 4) | (1 << 3) | (1 << 1) | 1,
}


class UnsupportedWidthError(ValueError):
    """Requested q outside the supported set {16, 32, 64}."""


class InstanceTooLargeError(ValueError):
    """No supported width satisfies 2^q >= 12 * n^6."""


class FieldTooSmallError(ValueError):
    """Field fails the 2^q >= 12 * n^6 bound for the given instance."""


def clmul(a: int, b: int) -> int:
    """Carryless (GF(2)[x]) product of two polynomials given as ints."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    """Remainder of polynomial a modulo polynomial m over GF(2)."""
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm and a:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def trial_division_irreducible(m: int) -> bool:
    """Irreducibility by trial division, for moduli of degree <= 32.

    A degree-d polynomial is reducible iff it has an irreducible factor of
    degree <= d // 2; dividing by every candidate of those degrees is exact.
    Candidates with zero constant term are skipped: they are multiples of x,
    and x divides m only if m's constant term is zero.
    """
    d = m.bit_length() - 1
    if d > 32:
        raise ValueError("trial division is only meant for degree <= 32")
    if not m & 1:
        return False
    for cand in range(3, 1 << (d // 2 + 1), 2):
        if poly_mod(m, cand) == 0:
            return False
    return True


def required_field_bits(n: int) -> int:
    """Smallest q (any integer) with 2^q >= 12 * n^6."""
    return (12 * n**6 - 1).bit_length()


def field_for_instance(n: int) -> int:
    """Smallest supported width q with 2^q >= 12 * n^6.

    Raises InstanceTooLargeError when even q = 64 is too small
    (first happens at n = 1075).
    """
    if n < 1:
        raise ValueError("instance size must be positive")
    need = required_field_bits(n)
    for q in SUPPORTED_WIDTHS:
        if q >= need:
            return q
    raise InstanceTooLargeError(
        f"n = {n} needs a {need}-bit field; largest supported is 64"
    )


class GF2q:
    """One of the supported binary fields, with scalar and bulk operations.

    The instance also carries the reduction constants used by the numba
    matrix kernels: red (modulus without its leading bit), mask, top (the
    high-bit probe), and ov8 (a 256-entry table folding the overflow byte
    of an 8-bit shift back into the field).
    """

    def __init__(self, q: int):
        if q not in _MODULI:
            raise UnsupportedWidthError(f"unsupported field width {q}")
        self.q = q
        self.modulus = _MODULI[q]
        self.order = 1 << q
        red = self.modulus ^ (1 << q)
        self.red = np.uint64(red)
        self.mask = np.uint64((1 << q) - 1)
        self.top = np.uint64(1 << (q - 1))
        # x^(q+i) = red * x^i for i in 0..7; the products stay below degree q
        # because every supported modulus has red of degree <= 7.
        self.ov8 = np.array([clmul(o, red) for o in range(256)], dtype=np.uint64)
        self.nbytes = q // 8

    def __repr__(self) -> str:
        return f"GF2q({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF2q) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("GF2q", self.q))

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        """Shift-and-add product with per-step reduction."""
        a = int(a)
        b = int(b)
        q = self.q
        m = self.modulus
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> q:
                a ^= m
        return r

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent")
        r = 1
        a = int(a)
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        """Multiplicative inverse via a^(2^q - 2); rejects zero."""
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.order - 2)

    def random_elements(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """Uniform draws from the full field, as a uint64 array."""
        return rng.integers(0, 1 << self.q, size=count, dtype=np.uint64)

    def random_element(self, rng: np.random.Generator) -> int:
        return int(self.random_elements(rng, 1)[0])

    def is_safe_for(self, n: int) -> bool:
        """Whether 2^q meets the 12 * n^6 bound for an n-vertex instance."""
        return self.order >= 12 * n**6

    def check_instance(self, n: int) -> None:
        if not self.is_safe_for(n):
            raise FieldTooSmallError(
                f"2^{self.q} < 12 * {n}^6; rank answers would lose their "
                f"correctness guarantee"
            )
