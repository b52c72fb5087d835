"""Quadratic Gauss sums over lattices and their reciprocity.

A lattice is given by the Gram matrix G of a basis. Vectors of the lattice
are integer coordinate vectors in that basis; vectors of the dual lattice are
G^{-1} y for integer y. B is the matrix of a self-adjoint map in the lattice
basis, so <x, By> = x^T G B y.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Sequence, Tuple

import numpy as np
import sympy

from ..config import DEFAULT_PRECISION
from ..errors import NonIntegralB, PreconditionViolation, SingularB
from ..utils.numeric import get_backend
from .smith import quotient_reps


def _to_matrix(rows) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(str(Fraction(x))) for x in row] for row in rows])


def _is_integral(M: sympy.Matrix) -> bool:
    return all(x.is_integer for x in M)


def _even_diagonal(M: sympy.Matrix) -> bool:
    return all(M[i, i] % 2 == 0 for i in range(M.rows))


@dataclass(frozen=True)
class GaussSumSpec:
    gram: sympy.Matrix
    r: int
    B: sympy.Matrix
    psi: sympy.Matrix

    @property
    def rank(self) -> int:
        return self.gram.rows

    def dual_B(self) -> sympy.Matrix:
        """Matrix of B acting on dual-lattice coordinates: G B G^{-1}."""
        return self.gram * self.B * self.gram.inv()


def precondition_failures(spec: GaussSumSpec) -> List[str]:
    """Every integrality condition the reciprocity formula needs that fails here."""
    G, B, psi, r = spec.gram, spec.B, spec.psi, spec.r
    G_inv = G.inv()
    failures = []
    if r <= 0:
        failures.append(f"r must be positive, got {r}")
    GB = G * B
    if GB != GB.T:
        failures.append("B is not self-adjoint for the lattice inner product")
    if not (_is_integral(r * GB) and _even_diagonal(r * GB)):
        failures.append("<lam, B r lam>/2 is not an integer on the lattice")
    if not _is_integral(GB):
        failures.append("<lam, B eta> is not an integer on the lattice")
    if not _is_integral(r * G * psi):
        failures.append("r <lam, psi> is not an integer on the lattice")
    dual_form = r * B * G_inv
    if not (_is_integral(dual_form) and _even_diagonal(dual_form)):
        failures.append("<mu, B r mu>/2 is not an integer on the dual lattice")
    if not _is_integral(r * G_inv):
        failures.append("<mu, r xi> is not an integer on the dual lattice")
    if not _is_integral(r * psi):
        failures.append("r <mu, psi> is not an integer on the dual lattice")
    if not _is_integral(spec.dual_B()):
        failures.append("B does not map the dual lattice into itself")
    return failures


def make_gauss_spec(gram, r: int, B, psi: Sequence) -> GaussSumSpec:
    """Builds a GaussSumSpec and checks every precondition exactly."""
    spec = GaussSumSpec(_to_matrix(gram), int(r), _to_matrix(B), _to_matrix([[x] for x in psi]))
    failures = precondition_failures(spec)
    if failures:
        raise PreconditionViolation("; ".join(failures))
    return spec


def _exact(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def gauss_lhs(spec: GaussSumSpec, precision: str = DEFAULT_PRECISION, shift: Sequence[int] = ()):
    """vol(dual) * sum over lam in L/rL of exp(pi i <lam, B lam>/r) exp(2 pi i <lam, psi>).

    shift moves every representative lam to lam + r * shift.
    """
    backend = get_backend(precision)
    G, GB = spec.gram, spec.gram * spec.B
    Gpsi = G * spec.psi
    terms = []
    shift = tuple(shift) or (0,) * spec.rank
    for lam in product(range(spec.r), repeat=spec.rank):
        v = sympy.Matrix([x + spec.r * s for x, s in zip(lam, shift)])
        exponent = _exact((v.T * GB * v)[0, 0]) / spec.r + 2 * _exact((v.T * Gpsi)[0, 0])
        terms.append(backend.exp_pi_i(exponent))
    volume_dual = 1 / backend.sqrt(_exact(G.det()))
    return volume_dual * backend.fsum(terms)


def dual_coset_reps(spec: GaussSumSpec) -> List[Tuple[int, ...]]:
    """Dual-lattice coordinates y of representatives of dual / B(dual)."""
    B_dual = spec.dual_B()
    if not _is_integral(B_dual):
        raise NonIntegralB("B is not an integer matrix on the dual lattice")
    if B_dual.det() == 0:
        raise SingularB("B must be invertible")
    return quotient_reps(B_dual)


def signature(spec: GaussSumSpec) -> int:
    """Signature of B, read off the symmetric form G B."""
    eigenvalues = np.linalg.eigvalsh(np.array((spec.gram * spec.B).tolist(), dtype=float))
    return int(np.sum(eigenvalues > 0) - np.sum(eigenvalues < 0))


def branch_factor(spec: GaussSumSpec, precision: str = DEFAULT_PRECISION):
    """(det(B/i))^{-1/2} as a product of principal roots: |det B|^{-1/2} exp(pi i sig(B)/4)."""
    backend = get_backend(precision)
    det = _exact(spec.B.det())
    if det == 0:
        raise SingularB("B must be invertible")
    return backend.exp_pi_i(Fraction(signature(spec), 4)) / backend.sqrt(abs(det))


def gauss_rhs(spec: GaussSumSpec, precision: str = DEFAULT_PRECISION):
    """(det(B/i))^{-1/2} r^{l/2} sum over mu of exp(-pi i r <mu + psi, B^{-1}(mu + psi)>)."""
    backend = get_backend(precision)
    G_inv = spec.gram.inv()
    form = spec.gram * spec.B.inv()
    terms = []
    for y in dual_coset_reps(spec):
        v = G_inv * sympy.Matrix(y) + spec.psi
        terms.append(backend.exp_pi_i(-spec.r * _exact((v.T * form * v)[0, 0])))
    return branch_factor(spec, precision) * backend.sqrt(spec.r) ** spec.rank * backend.fsum(terms)

