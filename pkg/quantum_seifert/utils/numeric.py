"""Precision backends for complex phases and compensated sums.

Phases are always passed in as exact rationals (multiples of pi) and reduced
modulo 2 before the single call to the exponential.
"""
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

import mpmath
import numpy as np

from ..config import HIGH_PRECISION_DPS, PRECISION_MODES
from ..errors import ConfigError

Rational = Union[int, Fraction]


def _reduce_mod_two(x: Rational) -> Fraction:
    return Fraction(x) % 2


class Backend:
    """Double precision backend on numpy complex128."""

    name = "double"
    dtype = np.complex128

    def exp_pi_i(self, x: Rational):
        return np.exp(1j * np.pi * float(_reduce_mod_two(x)))

    def exp_pi_i_array(self, numerators, denominator: int) -> np.ndarray:
        """exp(pi*i*n/denominator) for an integer array n."""
        num = np.asarray(numerators, dtype=np.int64)
        if denominator < 0:
            num, denominator = -num, -denominator
        reduced = np.mod(num, 2 * denominator)
        return np.exp(1j * np.pi * (reduced / denominator))

    def real(self, x: Rational):
        return float(x)

    def pi_i_power(self, x: Rational, m: int):
        """(pi i x)^m / m!, the r^-m coefficient of exp(pi i x / r)."""
        return (1j * math.pi * float(x)) ** m / math.factorial(m)

    def sqrt(self, x: Rational):
        return math.sqrt(x)

    def sin_pi(self, x: Rational):
        # sin(pi*x) with x reduced exactly first
        return float(np.sin(np.pi * float(Fraction(x) % 2)))

    def fsum(self, values: Iterable):
        arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values,
                         dtype=np.complex128).ravel()
        return complex(math.fsum(arr.real), math.fsum(arr.imag))

    def fsum_columns(self, arr: np.ndarray) -> np.ndarray:
        """Compensated sum down each column of a 2-D array."""
        out = np.empty(arr.shape[1], dtype=self.dtype)
        for j in range(arr.shape[1]):
            out[j] = self.fsum(arr[:, j])
        return out

    def zeros(self, n: int, m: int) -> np.ndarray:
        return np.zeros((n, m), dtype=np.complex128)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.complex128)

    def to_complex(self, x) -> complex:
        return complex(x)

    def __reduce__(self):
        # worker processes rebuild the backend from its mode name
        return (get_backend, (self.name,))

    def format_scalar(self, x) -> str:
        """Lossless text form used by the on-disk cache."""
        z = complex(x)
        return f"{z.real.hex()},{z.imag.hex()}"

    def parse_scalar(self, text: str):
        re_part, im_part = text.split(",")
        return complex(float.fromhex(re_part), float.fromhex(im_part))


class HighPrecisionBackend(Backend):
    """Backend on a private mpmath context; never touches the global mpmath.mp."""

    name = "high"
    dtype = object

    def __init__(self, dps: int = HIGH_PRECISION_DPS):
        self.ctx = mpmath.MPContext()
        self.ctx.dps = dps

    def exp_pi_i(self, x: Rational):
        x = _reduce_mod_two(x)
        return self.ctx.expjpi(self.ctx.mpf(x.numerator) / x.denominator)

    def exp_pi_i_array(self, numerators, denominator: int) -> np.ndarray:
        num = np.asarray(numerators, dtype=object)
        if denominator < 0:
            num, denominator = -num, -denominator
        ctx = self.ctx
        flat = [ctx.expjpi(ctx.mpf(int(n) % (2 * denominator)) / denominator) for n in num.ravel()]
        out = np.empty(len(flat), dtype=object)
        out[:] = flat
        return out.reshape(num.shape)

    def real(self, x: Rational):
        x = Fraction(x)
        return self.ctx.mpf(x.numerator) / x.denominator

    def pi_i_power(self, x: Rational, m: int):
        ctx = self.ctx
        return (ctx.mpc(0, 1) * ctx.pi * self.real(x)) ** m / ctx.factorial(m)

    def sqrt(self, x: Rational):
        return self.ctx.sqrt(self.real(x) if isinstance(x, (int, Fraction)) else x)

    def sin_pi(self, x: Rational):
        x = Fraction(x) % 2
        return self.ctx.sinpi(self.ctx.mpf(x.numerator) / x.denominator)

    def fsum(self, values: Iterable):
        if isinstance(values, np.ndarray):
            values = values.ravel().tolist()
        return self.ctx.fsum(values)

    def zeros(self, n: int, m: int) -> np.ndarray:
        out = np.empty((n, m), dtype=object)
        out[:] = [[self.ctx.mpc(0) for _ in range(m)] for _ in range(n)]
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self.ctx.mpc(1)
        return out

    def to_complex(self, x) -> complex:
        return complex(self.ctx.mpc(x))

    def format_scalar(self, x) -> str:
        z = self.ctx.mpc(x)
        return f"{self.ctx.nstr(z.real, self.ctx.dps + 5)},{self.ctx.nstr(z.imag, self.ctx.dps + 5)}"

    def parse_scalar(self, text: str):
        re_part, im_part = text.split(",")
        return self.ctx.mpc(self.ctx.mpf(re_part), self.ctx.mpf(im_part))


@lru_cache(maxsize=None)
def get_backend(precision: str = "double") -> Backend:
    """Returns the shared backend instance for a precision mode."""
    if precision == "double":
        return Backend()
    if precision == "high":
        return HighPrecisionBackend()
    raise ConfigError([f"precision must be one of {', '.join(PRECISION_MODES)}, got '{precision}'"])


def to_pair(x) -> list:
    """Serializes a complex scalar as [re, im]."""
    z = complex(x)
    return [z.real, z.imag]


def close_enough(x, y, rtol: float = 1e-8, atol: float = 1e-10, small: float = 1e-2) -> bool:
    """Relative agreement, falling back to absolute agreement for small values."""
    x, y = complex(x), complex(y)
    if max(abs(x), abs(y)) < small:
        return abs(x - y) <= atol
    return abs(x - y) <= rtol * max(abs(x), abs(y))
