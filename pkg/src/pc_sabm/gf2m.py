"""GF(2^m) arithmetic with log/antilog tables, plus binary polynomial helpers.

Binary polynomials over GF(2) are plain ints: bit ``i`` holds the
coefficient of ``x**i``.
"""

from __future__ import annotations

import numpy as np

# lexicographically smallest primitive polynomials
DEFAULT_PRIMITIVE_POLYS = {
    3: 0b1011,  # x^3 + x + 1
    4: 0b10011,  # x^4 + x + 1
    5: 0b100101,  # x^5 + x^2 + 1
    6: 0b1000011,  # x^6 + x + 1
    7: 0b10001001,  # x^7 + x^3 + 1
    8: 0b100011101,  # x^8 + x^4 + x^3 + x^2 + 1
}


class NonPrimitivePolynomial(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def poly_degree(p: int) -> int:
    """Degree of a binary polynomial; -1 for the zero polynomial."""
    return p.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    res = 0
    while b:
        if b & 1:
            res ^= a
        a <<= 1
        b >>= 1
    return res


def poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise DivisionByZero("polynomial division by zero")
    db = poly_degree(b)
    q = 0
    while a and poly_degree(a) >= db:
        shift = poly_degree(a) - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def poly_mod(a: int, b: int) -> int:
    return poly_divmod(a, b)[1]


def poly_to_bits(p: int) -> list[int]:
    """Coefficient list, lowest degree first."""
    return [(p >> i) & 1 for i in range(max(poly_degree(p) + 1, 1))]


def poly_from_bits(bits) -> int:
    return sum(int(b) << i for i, b in enumerate(bits))


def poly_str(p: int) -> str:
    if p == 0:
        return "0"
    terms = []
    for i in range(poly_degree(p), -1, -1):
        if (p >> i) & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return " + ".join(terms)


class Field:
    """GF(2^m) for 3 <= m <= 8, elements are ints in polynomial basis.

    ``exp`` is doubled in length so that ``exp[log[a] + log[b]]`` never needs
    a modulo reduction.
    """

    def __init__(self, m: int, primitive_poly: int | None = None):
        if not 3 <= m <= 8:
            raise ValueError(f"unsupported extension order m={m}")
        if primitive_poly is None:
            primitive_poly = DEFAULT_PRIMITIVE_POLYS[m]
        if poly_degree(primitive_poly) != m:
            raise DegreeMismatch(
                f"polynomial {poly_str(primitive_poly)} does not have degree {m}"
            )
        self.m = m
        self.primitive_poly = primitive_poly
        self.size = 1 << m
        self.order = self.size - 1

        exp = np.zeros(2 * self.order, dtype=np.int64)
        log = np.full(self.size, -1, dtype=np.int64)
        x = 1
        for i in range(self.order):
            if x == 0 or log[x] != -1:
                raise NonPrimitivePolynomial(
                    f"{poly_str(primitive_poly)}: alpha has order {i}, "
                    f"not {self.order}"
                )
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & self.size:
                x ^= primitive_poly
        if x != 1:
            raise NonPrimitivePolynomial(f"{poly_str(primitive_poly)} is not primitive")
        exp[self.order:] = exp[: self.order]
        exp.flags.writeable = False
        log.flags.writeable = False
        self.exp = exp
        self.log = log

    def __repr__(self):
        return f"Field(m={self.m}, primitive_poly={poly_str(self.primitive_poly)})"

    def alpha(self, i: int) -> int:
        """alpha**i for any integer i."""
        return int(self.exp[i % self.order])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no inverse in GF(2^m)")
        return int(self.exp[(self.order - self.log[a]) % self.order])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return int(self.exp[(self.log[a] * e) % self.order])

    def poly_eval(self, p, x: int) -> int:
        """Horner evaluation of ``p`` at ``x``.

        ``p`` is either a binary polynomial (int) or a sequence of field
        coefficients, lowest degree first.
        """
        coeffs = poly_to_bits(p) if isinstance(p, (int, np.integer)) else list(p)
        acc = 0
        for c in reversed(coeffs):
            acc = self.mul(acc, x) ^ int(c)
        return acc

    def conjugacy_class(self, exponent: int) -> list[int]:
        cls = []
        e = exponent % self.order
        while e not in cls:
            cls.append(e)
            e = (2 * e) % self.order
        return cls

    def min_poly(self, exponent: int) -> int:
        """Minimal polynomial over GF(2) of alpha**exponent."""
        if not 1 <= exponent <= self.order - 1:
            raise ValueError(f"exponent must lie in [1, {self.order - 1}]")
        coeffs = [1]  # field coefficients, lowest degree first
        for e in self.conjugacy_class(exponent):
            root = self.alpha(e)
            nxt = [0] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] ^= c
                nxt[i] ^= self.mul(c, root)
            coeffs = nxt
        assert all(c in (0, 1) for c in coeffs)
        return poly_from_bits(coeffs)


def make_field(m: int, primitive_poly: int | None = None) -> Field:
    return Field(m, primitive_poly)
