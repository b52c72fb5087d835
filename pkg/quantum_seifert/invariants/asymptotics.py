"""Large-r asymptotics of lens space invariants.

The Weyl/coset closed form of tau(L(p, q)) is regrouped by the phase
q|nu|^2 / (2p) mod 1 of each coset representative. Within a group the only
r-dependence left besides exp(2 pi i r alpha) r^{-l/2} is exp(pi i kappa_w / r),
which is expanded as a power series in 1/r.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..errors import DegenerateData, NotCoprime, PZero
from ..lie.modular_data import ModularData, norm_numerators
from ..lie.root_system import RootSystem, coset_reps_array, rho_norm_sq, weyl_arrays
from ..number_theory.arith import dedekind_sum, sign
from ..utils.numeric import get_backend, to_pair
from .rt_invariants import InvariantMethod, tau_lens

# moduli below this count as a vanishing coefficient
ZERO_COEFFICIENT = 1e-12


def _check(p: int, q: int) -> None:
    if p == 0:
        raise PZero("lens space asymptotics need p != 0")
    if gcd(p, q) != 1:
        raise NotCoprime(f"L({p},{q}) needs gcd(p, q) = 1")


def _phase_keys(rs: RootSystem, p: int, q: int) -> Tuple[np.ndarray, List[Fraction]]:
    nus = coset_reps_array(rs, p)
    norms = np.einsum("ij,jk,ik->i", nus, rs.adjugate, nus)
    keys = [Fraction(q * int(n), 2 * p * rs.det_cartan) % 1 for n in norms]
    return nus, keys


def cs_phase_set(rs: RootSystem, p: int, q: int) -> List[Fraction]:
    """Distinct values of q|nu|^2 / (2p) mod 1 over the root lattice modulo p, sorted."""
    _check(p, q)
    _, keys = _phase_keys(rs, p, q)
    return sorted(set(keys))


@dataclass(frozen=True)
class WeylContribution:
    """One w summand of a phase group: weight * exp(pi i kappa / r)."""

    kappa: Fraction
    weight: object


@dataclass
class AsymptoticTerm:
    alpha: Fraction
    d: Fraction
    coefficients: List
    contributions: Tuple[WeylContribution, ...] = field(repr=False, default=())

    @property
    def b(self):
        return self.coefficients[0]

    @property
    def c(self) -> List:
        """c_m = C_m / C_0 for m >= 1; empty when the leading coefficient vanishes."""
        if abs(complex(self.b)) < ZERO_COEFFICIENT:
            return []
        return [x / self.b for x in self.coefficients[1:]]

    @property
    def leading_order(self) -> Optional[int]:
        for m, x in enumerate(self.coefficients):
            if abs(complex(x)) >= ZERO_COEFFICIENT:
                return m
        return None

    def to_dict(self) -> Dict:
        b = complex(self.b)
        return {
            "alpha": str(self.alpha),
            "d": str(self.d),
            "b": to_pair(b),
            "b_modulus": abs(b),
            "b_argument": float(np.angle(b)),
            "c": [to_pair(x) for x in self.c],
            "coefficients": [to_pair(x) for x in self.coefficients],
            "leading_order": self.leading_order,
        }


@dataclass
class AsymptoticExpansion:
    algebra: str
    p: int
    q: int
    order: int
    precision: str
    terms: List[AsymptoticTerm]

    @property
    def phases(self) -> List[Fraction]:
        return [t.alpha for t in self.terms]

    def to_dict(self) -> Dict:
        return {
            "algebra": self.algebra,
            "lens": [self.p, self.q],
            "order": self.order,
            "precision": self.precision,
            "terms": [t.to_dict() for t in self.terms],
        }


def lens_expansion(md: ModularData, p: int, q: int, N: int) -> AsymptoticExpansion:
    """Groups the Weyl/coset terms of tau(L(p, q)) by phase and expands each group to order N.

    Only the root system and the backend of md are used; the expansion does not depend on r.
    """
    _check(p, q)
    if N < 0:
        raise ValueError(f"expansion order must be non-negative, got {N}")
    rs, backend = md.rs, md.backend
    l, n_pos = rs.rank, rs.num_pos_roots
    mats, signs = weyl_arrays(rs)
    rho = np.asarray(rs.rho, dtype=np.int64)
    w_rho = mats @ rho
    nus, keys = _phase_keys(rs, p, q)

    K = (
        backend.exp_pi_i(Fraction(n_pos, 2)) * sign(p) ** n_pos
        / (backend.sqrt(abs(p)) ** l * backend.sqrt(rs.det_cartan))
    )
    base = 12 * sign(p) * dedekind_sum(q, abs(p)) * rho_norm_sq(rs)
    kappas = [base - Fraction(2 * int(x @ rs.adjugate @ rho), p * rs.det_cartan) for x in w_rho]
    cross = np.einsum("vi,ij,wj->vw", nus, rs.adjugate, q * rho[None, :] - w_rho)

    terms: List[AsymptoticTerm] = []
    for alpha in sorted(set(keys)):
        rows = [i for i, key in enumerate(keys) if key == alpha]
        contributions = []
        for w, (kappa, det_w) in enumerate(zip(kappas, signs)):
            phases = backend.exp_pi_i_array(2 * cross[rows, w], p * rs.det_cartan)
            contributions.append(WeylContribution(kappa, K * int(det_w) * backend.fsum(phases)))
        coefficients = [
            backend.fsum([c.weight * backend.pi_i_power(c.kappa, m) for c in contributions])
            for m in range(N + 1)
        ]
        terms.append(AsymptoticTerm(alpha, Fraction(-l, 2), coefficients, tuple(contributions)))
    return AsymptoticExpansion(rs.name, p, q, N, backend.name, terms)


def _phase_and_growth(backend, term: AsymptoticTerm, r: int):
    return backend.exp_pi_i(2 * r * term.alpha) * backend.sqrt(r) ** int(2 * term.d)


def evaluate_expansion(expansion: AsymptoticExpansion, r: int, N: Optional[int] = None):
    """Truncated asymptotic series at level r, keeping powers r^-m for m <= N."""
    N = expansion.order if N is None else N
    if N > expansion.order:
        raise ValueError(f"expansion was computed to order {expansion.order}, asked for {N}")
    backend = get_backend(expansion.precision)
    values = []
    for term in expansion.terms:
        inner = backend.fsum([term.coefficients[m] / backend.real(r) ** m for m in range(N + 1)])
        values.append(_phase_and_growth(backend, term, r) * inner)
    return backend.fsum(values)


def regrouped_sum(expansion: AsymptoticExpansion, r: int):
    """The untruncated grouped sum; equals the closed form of tau(L(p, q)) at every r."""
    backend = get_backend(expansion.precision)
    values = []
    for term in expansion.terms:
        inner = backend.fsum([c.weight * backend.exp_pi_i(c.kappa / r) for c in term.contributions])
        values.append(_phase_and_growth(backend, term, r) * inner)
    return backend.fsum(values)


class SlopeFit(NamedTuple):
    slope: float
    stderr: float
    intercept: float
    points: int


def slope_fit(values: Sequence[Tuple[float, float]]) -> SlopeFit:
    """Least-squares slope of log|residual| against log r."""
    if len(values) < 5:
        raise DegenerateData(f"slope fit needs at least 5 points, got {len(values)}")
    r = np.array([float(x) for x, _ in values])
    res = np.abs(np.array([complex(y) for _, y in values]))
    if np.any(res == 0) or np.any(r <= 0):
        raise DegenerateData("slope fit needs positive r and nonzero residuals")
    if len(set(r.tolist())) < 2:
        raise DegenerateData("slope fit needs at least two distinct r values")
    coeffs, cov = np.polyfit(np.log(r), np.log(res), 1, cov=True)
    return SlopeFit(float(coeffs[0]), float(np.sqrt(abs(cov[0, 0]))), float(coeffs[1]), len(values))


def residual_table(
    md_factory: Callable[[int], ModularData],
    p: int,
    q: int,
    N: int,
    r_values: Sequence[int],
) -> pd.DataFrame:
    """Exact values and truncation residuals for orders 0..N over a range of levels.

    md_factory maps a level r to its modular data; the expansion is built once.
    """
    _check(p, q)
    if not r_values:
        raise DegenerateData("residual table needs at least one level")
    expansion = lens_expansion(md_factory(r_values[0]), p, q, N)
    rows = []
    for r in r_values:
        exact = tau_lens(md_factory(r), p, q, InvariantMethod.LENS_ASYMP).value
        row = {"r": r, "exact_re": float(complex(exact).real), "exact_im": float(complex(exact).imag)}
        row["regrouped_gap"] = abs(complex(regrouped_sum(expansion, r) - exact))
        for m in range(N + 1):
            row[f"residual_{m}"] = abs(complex(exact - evaluate_expansion(expansion, r, m)))
        rows.append(row)
    return pd.DataFrame(rows)


def decay_report(table: pd.DataFrame, rank: int, margin: float = 0.7) -> pd.DataFrame:
    """Fitted decay slope per truncation order, against the bound -l/2 - N - margin."""
    rows = []
    for column in sorted(c for c in table.columns if c.startswith("residual_")):
        N = int(column.split("_")[1])
        fit = slope_fit(list(zip(table["r"], table[column])))
        bound = -rank / 2 - N - margin
        rows.append({
            "order": N,
            "slope": fit.slope,
            "stderr": fit.stderr,
            "bound": bound,
            "passed": fit.slope <= bound,
        })
    return pd.DataFrame(rows)
