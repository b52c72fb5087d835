"""Seifert fibered manifolds given by their Seifert invariants.

String grammar, one manifold per string:

    o;0|-1;(2,1),(3,1),(5,1)   normalized data (eps;g|b;fibers)
    o;0|3                      normalized data without exceptional fibers
    n;2;(2,1),(3,-1)           non-normalized data, no b
"""
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from ..errors import ManifoldSpecError, NotCoprime, ZeroAlpha
from ..number_theory.arith import sign


class BaseOrientability(str, Enum):
    ORIENTABLE = "o"
    NON_ORIENTABLE = "n"


Fiber = Tuple[int, int]


@dataclass(frozen=True)
class SeifertPresentation:
    epsilon: BaseOrientability
    genus: int
    b: Optional[int]
    fibers: Tuple[Fiber, ...] = ()
    normalized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "epsilon", BaseOrientability(self.epsilon))
        object.__setattr__(self, "fibers", tuple((int(a), int(b)) for a, b in self.fibers))
        if self.genus < 0:
            raise ValueError(f"genus must be non-negative, got {self.genus}")
        if self.epsilon is BaseOrientability.NON_ORIENTABLE and self.genus == 0:
            raise ValueError("a non-orientable base needs genus > 0")
        for alpha, beta in self.fibers:
            if alpha <= 0:
                raise ZeroAlpha(f"fiber ({alpha},{beta}) needs alpha > 0")
            if gcd(alpha, beta) != 1:
                raise NotCoprime(f"fiber ({alpha},{beta}) is not a coprime pair")
            if self.normalized and not 0 < beta < alpha:
                raise ValueError(f"normalized fiber ({alpha},{beta}) needs 0 < beta < alpha")

    @property
    def a_eps(self) -> int:
        return 2 if self.epsilon is BaseOrientability.ORIENTABLE else 1

    @property
    def n(self) -> int:
        return len(self.fibers)

    @property
    def has_b(self) -> bool:
        return self.b is not None

    @property
    def euler_number(self) -> Fraction:
        """E = -(b + sum beta_j / alpha_j), with b = 0 for non-normalized data."""
        return -((self.b or 0) + sum((Fraction(beta, alpha) for alpha, beta in self.fibers), Fraction(0)))

    @property
    def euler_sign(self) -> int:
        return sign(self.euler_number)

    def normalize(self) -> "SeifertPresentation":
        """Equivalent normalized data: b absorbs floor(beta/alpha); trivial fibers drop out."""
        b = self.b or 0
        fibers: List[Fiber] = []
        for alpha, beta in self.fibers:
            shift = math.floor(Fraction(beta, alpha))
            b += shift
            beta -= shift * alpha
            if beta != 0:
                fibers.append((alpha, beta))
        return SeifertPresentation(self.epsilon, self.genus, b, tuple(fibers), normalized=True)

    def canonical(self) -> str:
        head = f"{self.epsilon.value};{self.genus}"
        if self.has_b:
            head += f"|{self.b}"
        if not self.fibers:
            return head
        return head + ";" + ",".join(f"({a},{b})" for a, b in self.fibers)

    def __str__(self) -> str:
        return self.canonical()


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_spaces(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_spaces()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, message: str, position: Optional[int] = None) -> None:
        raise ManifoldSpecError(message, self.text, self.pos if position is None else position)

    def expect(self, char: str, what: str) -> None:
        if self.peek() != char:
            found = self.peek() or "end of input"
            self.fail(f"expected '{char}' {what}, found '{found}'")
        self.pos += 1

    def integer(self, what: str) -> int:
        self.skip_spaces()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        token = self.text[start:self.pos]
        if token in ("", "+", "-"):
            self.fail(f"expected an integer for {what}", start)
        return int(token)

    def pair(self) -> Fiber:
        start = self.pos
        self.expect("(", "to open a fiber pair")
        alpha = self.integer("alpha")
        if self.peek() == "":
            self.fail("unclosed pair", start)
        self.expect(",", "between alpha and beta")
        beta = self.integer("beta")
        if self.peek() == "":
            self.fail("unclosed pair", start)
        self.expect(")", "to close the fiber pair")
        return alpha, beta


def parse_seifert(text: str) -> SeifertPresentation:
    """Parses 'eps;g|b;(a1,b1),...' or the non-normalized 'eps;g;(a1,b1),...'."""
    scanner = _Scanner(text)
    head = scanner.peek()
    if head not in ("o", "n"):
        scanner.fail("base type must be 'o' or 'n'")
    scanner.pos += 1
    scanner.expect(";", "after the base type")
    genus = scanner.integer("genus")
    b = None
    if scanner.peek() == "|":
        scanner.pos += 1
        b = scanner.integer("b")
    fibers: List[Fiber] = []
    if scanner.peek() == ";":
        scanner.pos += 1
        fibers.append(scanner.pair())
        while scanner.peek() == ",":
            scanner.pos += 1
            fibers.append(scanner.pair())
    if scanner.peek() != "":
        scanner.fail(f"unexpected '{scanner.peek()}'")
    try:
        return SeifertPresentation(BaseOrientability(head), genus, b, tuple(fibers))
    except ValueError as e:
        raise ManifoldSpecError(str(e), text) from e


def lens_space_presentation(p: int, q: int) -> SeifertPresentation:
    """L(p, q) fibered over S^2 with Euler number -p/q, at most one exceptional fiber."""
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) = {gcd(p, q)}, expected 1")
    if q == 0:
        # L(+-1, 0) is the 3-sphere
        return SeifertPresentation(BaseOrientability.ORIENTABLE, 0, -1, ())
    x = Fraction(p, q)
    b = math.floor(x)
    rest = x - b
    fibers = ((rest.denominator, rest.numerator),) if rest else ()
    return SeifertPresentation(BaseOrientability.ORIENTABLE, 0, b, fibers)
