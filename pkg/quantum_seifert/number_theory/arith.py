"""Exact integer arithmetic: Dedekind sums, the Rademacher Phi function,
negative continued fractions and words in the generators of SL(2, Z).

The generators are Xi = [[0, -1], [1, 0]] and Theta = [[1, 1], [0, 1]]. For a
continued fraction C = (m_1, ..., m_t) the matrix B^C is the product
Theta^{m_t} Xi ... Theta^{m_1} Xi.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import NotCoprime, NotUnimodular, ZeroDenominator

Rational = Fraction


def sign(x) -> int:
    """Sign with sign(0) = 0."""
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class SL2ZMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise NotUnimodular(f"[[{self.a}, {self.b}], [{self.c}, {self.d}]] does not have determinant 1")

    def __matmul__(self, other: "SL2ZMatrix") -> "SL2ZMatrix":
        return SL2ZMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "SL2ZMatrix":
        return SL2ZMatrix(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "SL2ZMatrix":
        return SL2ZMatrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> "SL2ZMatrix":
        base = self if n >= 0 else self.inverse()
        result = IDENTITY
        for _ in range(abs(n)):
            result = result @ base
        return result

    def as_list(self) -> List[List[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = SL2ZMatrix(1, 0, 0, 1)
XI = SL2ZMatrix(0, -1, 1, 0)
THETA = SL2ZMatrix(1, 1, 0, 1)


def theta_power(n: int) -> SL2ZMatrix:
    return SL2ZMatrix(1, n, 0, 1)


def word_matrix(word: Sequence[Tuple[str, int]]) -> SL2ZMatrix:
    """Product of generator powers, read left to right, e.g. [("xi", 1), ("theta", 5)]."""
    result = IDENTITY
    for generator, power in word:
        if generator == "xi":
            result = result @ (XI ** power)
        elif generator == "theta":
            result = result @ theta_power(power)
        else:
            raise ValueError(f"unknown generator '{generator}'")
    return result


@dataclass(frozen=True)
class ContinuedFraction:
    terms: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(m) for m in self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def sequences(self) -> Tuple[List[int], List[int], List[int], List[int]]:
        """The entries a_k, b_k, c_k, d_k of B_k^C for k = 0..t."""
        a, b, c, d = [1], [0], [0], [1]
        for m in self.terms:
            a.append(m * a[-1] - c[-1])
            b.append(m * b[-1] - d[-1])
            c.append(a[-2])
            d.append(b[-2])
        return a, b, c, d

    def matrix(self) -> SL2ZMatrix:
        a, b, c, d = self.sequences()
        return SL2ZMatrix(a[-1], b[-1], c[-1], d[-1])

    def nested_value(self) -> Fraction:
        """m_t - 1/(m_{t-1} - 1/(... - 1/m_1))."""
        if not self.terms:
            raise ZeroDenominator("empty continued fraction has no value")
        value = Fraction(self.terms[0])
        for m in self.terms[1:]:
            if value == 0:
                raise ZeroDenominator(f"continued fraction {self.terms} has a zero partial value")
            value = m - 1 / value
        return value

    def sign_changes(self) -> int:
        """sum over k of sign(a_{k-1} a_k)."""
        a = self.sequences()[0]
        return sum(sign(a[k - 1] * a[k]) for k in range(1, len(a)))

    def __add__(self, other: "ContinuedFraction") -> "ContinuedFraction":
        return ContinuedFraction(self.terms + other.terms)


def _check_coprime(s: int, q: int) -> None:
    if gcd(s, q) != 1:
        raise NotCoprime(f"gcd({s}, {q}) = {gcd(s, q)}, expected 1")


def dedekind_sum(s: int, q: int) -> Fraction:
    """Exact Dedekind sum s(s, q) by the reciprocity recursion."""
    if q == 0:
        raise ZeroDenominator("Dedekind sum needs a nonzero modulus")
    _check_coprime(s, q)
    k = abs(q)
    h = s % k
    total = Fraction(0)
    sgn = 1
    while h != 0:
        # s(h, k) + s(k, h) = (h/k + k/h + 1/(hk)) / 12 - 1/4
        total += sgn * (Fraction(h * h + k * k + 1, 12 * h * k) - Fraction(1, 4))
        h, k = k % h, h
        sgn = -sgn
    return total


def dedekind_sum_cotangent(s: int, q: int) -> float:
    """Floating cotangent sum (1/4|q|) sum_j cot(pi j/q) cot(pi s j/q)."""
    n = abs(q)
    if n == 1:
        return 0.0
    j = np.arange(1, n)
    return float(np.sum(1 / np.tan(np.pi * j / q) / np.tan(np.pi * s * j / q)) / (4 * n))


def rademacher_phi(U: SL2ZMatrix) -> Fraction:
    if U.c == 0:
        return Fraction(U.b, U.d)
    return Fraction(U.a + U.d, U.c) - 12 * sign(U.c) * dedekind_sum(U.d, abs(U.c))


def mod_inverse(beta: int, alpha: int) -> int:
    """beta* with beta * beta* = 1 mod alpha and 0 <= beta* < alpha."""
    if alpha <= 0:
        raise ValueError(f"modulus must be positive, got {alpha}")
    _check_coprime(beta, alpha)
    if alpha == 1:
        return 0
    return pow(beta, -1, alpha)


def cf_expand(target: Fraction) -> ContinuedFraction:
    """Ceiling (Hirzebruch-Jung) expansion with nested value equal to target."""
    target = Fraction(target)
    terms: List[int] = []
    x = target
    while True:
        m = math.ceil(x)
        terms.append(m)
        if m == x:
            break
        x = 1 / (m - x)
    return ContinuedFraction(tuple(reversed(terms)))


def cf_expand_pair(alpha: int, beta: int) -> ContinuedFraction:
    if beta == 0:
        raise ZeroDenominator(f"cannot expand {alpha}/0")
    _check_coprime(alpha, beta)
    return cf_expand(Fraction(alpha, beta))


def decompose_sl2z(U: SL2ZMatrix) -> Tuple[int, ContinuedFraction, int]:
    """Writes U = eps * B^C * Theta^n.

    For c = 0 the expansion is empty. For a = 0 it is (0), so B^C = Xi.
    Otherwise C is the ceiling expansion of a/c, whose a_k are all nonzero.
    """
    a, c = U.a, U.c
    if c == 0:
        eps = a
        C, n = ContinuedFraction(()), eps * U.b
    elif a == 0:
        eps = c
        C, n = ContinuedFraction((0,)), eps * U.d
    else:
        C = cf_expand(Fraction(a, c))
        B = C.matrix()
        eps = 1 if (B.a, B.c) == (a, c) else -1
        rest = (B if eps == 1 else -B).inverse() @ U
        if (rest.a, rest.c, rest.d) != (1, 0, 1):
            raise ArithmeticError(f"decomposition of {U} failed")
        n = rest.b
    if (C.matrix() @ theta_power(n) if eps == 1 else -(C.matrix() @ theta_power(n))) != U:
        raise ArithmeticError(f"decomposition of {U} does not reconstruct it")
    return eps, C, n


def cf_for_matrix(V: SL2ZMatrix) -> ContinuedFraction:
    """C' with B^{C'} = V exactly, using Theta^0 Xi Theta^0 Xi = -1 to fix the sign."""
    eps, C, n = decompose_sl2z(V)
    if n != 0:
        # Theta^n = -B^{(0, n)}
        C = ContinuedFraction((0, n)) + C
        eps = -eps
    if not C.terms:
        C = ContinuedFraction((0, 0))
        eps = -eps
    if eps == -1:
        C = C + ContinuedFraction((0, 0))
    if C.matrix() != V:
        raise ArithmeticError(f"expansion {C.terms} does not reproduce {V}")
    return C
