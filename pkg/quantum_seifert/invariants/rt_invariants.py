"""Reshetikhin-Turaev invariants of Seifert manifolds and lens spaces.

Seifert manifolds are evaluated two ways: as a product of S and T matrix
columns over the alcove (matrix form), and by the Lie-theoretic closed form
where every fiber contributes a Weyl group and coset sum (closed form).
Lens spaces have three evaluators of their own.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config import AGREEMENT_ATOL, AGREEMENT_RTOL, SMALL_VALUE_THRESHOLD, TERM_BUDGET
from ..errors import MissingSignTable, NotCoprime, PZero, TermBudgetExceeded
from ..lie.modular_data import (
    ModularData,
    norm_numerators,
    omega_power,
    sine_product,
    twist_power,
)
from ..lie.root_system import (
    WeightVec,
    coset_reps_array,
    rho_norm_sq,
    weyl_arrays,
    weyl_group_order,
)
from ..number_theory.arith import (
    ContinuedFraction,
    SL2ZMatrix,
    cf_expand,
    cf_expand_pair,
    dedekind_sum,
    mod_inverse,
    rademacher_phi,
    sign,
)
from ..representation.sl2z_rep import coset_prefactor, rep_bruteforce, rep_row_rho, sg_column
from ..utils.numeric import close_enough, to_pair
from .seifert import SeifertPresentation


class InvariantMethod(str, Enum):
    MATRIX_FORM = "matrix_form"
    CLOSED_FORM = "closed_form"
    LENS_CF = "lens_cf"
    LENS_RTLENS = "lens_rtlens"
    LENS_ASYMP = "lens_asymp"


SEIFERT_METHODS = (InvariantMethod.MATRIX_FORM, InvariantMethod.CLOSED_FORM)
LENS_METHODS = (InvariantMethod.LENS_CF, InvariantMethod.LENS_RTLENS, InvariantMethod.LENS_ASYMP)


@dataclass(frozen=True)
class SelfDualSignTable:
    """Signs eps_lam = +-1 attached to the self-dual simple objects."""

    signs: Dict[WeightVec, int]

    def __post_init__(self):
        clean = {}
        for lam, value in self.signs.items():
            if value not in (1, -1):
                raise ValueError(f"sign for {tuple(lam)} must be +1 or -1, got {value}")
            clean[tuple(lam)] = int(value)
        object.__setattr__(self, "signs", clean)

    def sign(self, lam: Sequence[int]) -> int:
        try:
            return self.signs[tuple(lam)]
        except KeyError:
            raise MissingSignTable(f"no sign recorded for the self-dual weight {tuple(lam)}") from None

    @classmethod
    def trivial(cls, md: ModularData) -> "SelfDualSignTable":
        return cls({lam: 1 for lam in md.index_set if md.dual(lam) == lam})


@dataclass
class InvariantResult:
    value: object
    method: InvariantMethod
    metadata: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {"value": to_pair(self.value), "method": self.method.value, "metadata": self.metadata}


def _metadata(md: ModularData, manifold: str, **extra) -> Dict[str, object]:
    data: Dict[str, object] = {
        "algebra": md.rs.name,
        "r": md.r,
        "manifold": manifold,
        "precision": md.backend.name,
    }
    data.update({key: str(value) if isinstance(value, Fraction) else value for key, value in extra.items()})
    return data


def _sign_exponent(M: SeifertPresentation) -> int:
    return M.a_eps * M.genus


def _require_signs(M: SeifertPresentation, signs: Optional[SelfDualSignTable]) -> None:
    if _sign_exponent(M) % 2 == 1 and signs is None:
        raise MissingSignTable(
            f"{M.canonical()} has a non-orientable base of odd genus; supply a SelfDualSignTable"
        )


def _sector_weight(md: ModularData, M: SeifertPresentation, signs: Optional[SelfDualSignTable],
                   lam: WeightVec) -> int:
    """b_lam * eps_lam^{a g}: 0 for non-self-dual lam over a non-orientable base."""
    if M.a_eps == 2:
        return 1
    if md.dual(lam) != lam:
        return 0
    if _sign_exponent(M) % 2 == 0:
        return 1
    return signs.sign(lam)


def fiber_expansion(alpha: int, beta: int) -> ContinuedFraction:
    """Default continued fraction of alpha/beta; the trivial fiber (1, 0) gets (0, 0)."""
    if beta == 0:
        if alpha != 1:
            raise NotCoprime(f"fiber ({alpha},0) is not a coprime pair")
        return ContinuedFraction((0, 0))
    return cf_expand_pair(alpha, beta)


def _check_expansions(M: SeifertPresentation, expansions: Sequence[ContinuedFraction]) -> None:
    if len(expansions) != M.n:
        raise ValueError(f"got {len(expansions)} expansions for {M.n} fibers")
    for (alpha, beta), C in zip(M.fibers, expansions):
        if beta == 0:
            # B^C must send the fiber to a c = 0 matrix
            if C.matrix().c != 0:
                raise ValueError(f"expansion {C.terms} does not fit the fiber ({alpha},0)")
            continue
        if C.nested_value() != Fraction(alpha, beta):
            raise ValueError(f"expansion {C.terms} is not a continued fraction of {alpha}/{beta}")


def matrix_form_sigma(M: SeifertPresentation, expansions: Sequence[ContinuedFraction]) -> Fraction:
    """The framing exponent of (Delta D^-1) in the matrix form."""
    sigma = Fraction((M.a_eps - 1) * M.euler_sign)
    for (alpha, beta), C in zip(M.fibers, expansions):
        sigma += sign(alpha * beta)
        sigma += Fraction(sum(C.terms) - rademacher_phi(C.matrix()), 3)
    return sigma


def tau_matrix_form(
    md: ModularData,
    M: SeifertPresentation,
    signs: Optional[SelfDualSignTable] = None,
    expansions: Optional[Sequence[ContinuedFraction]] = None,
) -> InvariantResult:
    """tau(M) as a sum over I of twists, quantum dimensions and (S G^C) columns."""
    _require_signs(M, signs)
    if expansions is None:
        expansions = [fiber_expansion(alpha, beta) for alpha, beta in M.fibers]
    else:
        expansions = list(expansions)
        _check_expansions(M, expansions)
    backend = md.backend
    k = _sign_exponent(M)
    sigma = matrix_form_sigma(M, expansions)
    columns = [sg_column(md, C, with_s=True) for C in expansions]

    terms = []
    for i, lam in enumerate(md.index_set):
        weight = _sector_weight(md, M, signs, lam)
        if weight == 0:
            continue
        term = weight * md.dims[i] ** (2 - M.n - k)
        if M.has_b:
            term = term * twist_power(md, lam, -M.b)
        for column in columns:
            term = term * column[i]
        terms.append(term)
    total = backend.fsum(terms)
    total_length = sum(len(C) for C in expansions)
    value = omega_power(md, -3 * sigma) * md.rank_D ** (k - 2 - total_length) * total
    return InvariantResult(
        value,
        InvariantMethod.MATRIX_FORM,
        _metadata(md, M.canonical(), sigma=sigma, expansions=[list(C.terms) for C in expansions]),
    )


@dataclass(frozen=True)
class _FiberSum:
    """Weyl/coset data for one fiber, flattened over the (w, nu) pairs.

    The fiber factor at lam is sum_k signs[k] exp(pi i (offsets[k] - 2 lam . shifts[k]) / denominator).
    """

    signs: np.ndarray
    offsets: np.ndarray
    shifts: np.ndarray
    denominator: int


def _fiber_sum(md: ModularData, alpha: int, beta: int) -> _FiberSum:
    rs, r = md.rs, md.r
    beta_star = mod_inverse(beta, alpha)
    mats, signs = weyl_arrays(rs)
    nus = coset_reps_array(rs, alpha)
    w_rho = mats @ np.asarray(rs.rho, dtype=np.int64)
    pairings = np.einsum("wi,ij,vj->wv", w_rho, rs.adjugate, nus)
    offsets = -r * beta_star * (r * norm_numerators(md, nus)[None, :] + 2 * pairings)
    y = r * nus[None, :, :] + w_rho[:, None, :]
    shifts = np.einsum("wvi,ij->wvj", y, rs.adjugate)
    return _FiberSum(
        signs=np.repeat(signs, len(nus)),
        offsets=offsets.ravel(),
        shifts=shifts.reshape(-1, rs.rank),
        denominator=r * alpha * rs.det_cartan,
    )


def _fiber_value(md: ModularData, fiber: _FiberSum, lam: WeightVec):
    numerators = fiber.offsets - 2 * (fiber.shifts @ np.asarray(lam, dtype=np.int64))
    phases = md.backend.exp_pi_i_array(numerators, fiber.denominator) * fiber.signs
    return md.backend.fsum(phases)


def _closed_form_terms(
    md: ModularData,
    M: SeifertPresentation,
    signs: Optional[SelfDualSignTable],
    fibers: Sequence[_FiberSum],
    weights: Sequence[WeightVec],
) -> List:
    backend, rs, r = md.backend, md.rs, md.r
    k = _sign_exponent(M)
    E = M.euler_number
    terms = []
    for lam in weights:
        weight = _sector_weight(md, M, signs, lam)
        if weight == 0:
            continue
        lam_sq = Fraction(int(np.asarray(lam) @ rs.adjugate @ np.asarray(lam)), rs.det_cartan)
        term = weight * sine_product(rs, lam, r, backend) ** (2 - M.n - k)
        term = term * backend.exp_pi_i(E * lam_sq / r)
        for fiber in fibers:
            term = term * _fiber_value(md, fiber, lam)
        terms.append(term)
    return terms


def _closed_form_worker(args) -> List[str]:
    md, M, signs, fibers, weights = args
    # text round trip keeps high precision values out of the pickle layer
    return [md.backend.format_scalar(t) for t in _closed_form_terms(md, M, signs, fibers, weights)]


def closed_form_term_count(md: ModularData, M: SeifertPresentation) -> int:
    """Number of (lam, w, nu) phases the factorized closed form evaluates."""
    order = weyl_group_order(md.rs)
    return md.size * sum(order * alpha ** md.rs.rank for alpha, _ in M.fibers)


def _chunks(items: Sequence, parts: int) -> List[Sequence]:
    size = -(-len(items) // parts)
    return [items[i:i + size] for i in range(0, len(items), size)]


def tau_closed_form(
    md: ModularData,
    M: SeifertPresentation,
    signs: Optional[SelfDualSignTable] = None,
    workers: int = 1,
    term_budget: int = TERM_BUDGET,
) -> InvariantResult:
    """tau(M) from the Lie-theoretic closed form.

    The alcove sweep can be split over worker processes; per-lam terms are
    summed in index order either way.
    """
    _require_signs(M, signs)
    terms_needed = closed_form_term_count(md, M)
    if terms_needed > term_budget:
        raise TermBudgetExceeded(terms_needed, term_budget)
    backend, rs, r = md.backend, md.rs, md.r
    a_eps, k, n = M.a_eps, _sign_exponent(M), M.n
    N, l = rs.num_pos_roots, rs.rank
    E, sign_E = M.euler_number, M.euler_sign
    rho_sq = rho_norm_sq(rs)
    dedekind_total = sum((dedekind_sum(beta, alpha) for alpha, beta in M.fibers), Fraction(0))
    A = 1
    for alpha, _ in M.fibers:
        A *= alpha

    fibers = [_fiber_sum(md, alpha, beta) for alpha, beta in M.fibers]
    weights = list(md.index_set)
    if workers > 1 and len(weights) > 1:
        jobs = [(md, M, signs, fibers, chunk) for chunk in _chunks(weights, workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            terms = [backend.parse_scalar(text) for chunk in pool.map(_closed_form_worker, jobs) for text in chunk]
    else:
        terms = _closed_form_terms(md, M, signs, fibers, weights)
    Z = backend.fsum(terms)

    phase = backend.exp_pi_i(rho_sq / r * (3 * (a_eps - 1) * sign_E - E - 12 * dedekind_total))
    phase = phase * backend.exp_pi_i(Fraction(n * N, 2))
    phase = phase * backend.exp_pi_i(3 * rho_sq * (1 - a_eps) * sign_E / rs.dual_coxeter)
    scale = (
        backend.sqrt(r) ** (l * (k - 2))
        / backend.real(Fraction(2) ** (N * (n + k - 2)))
        / backend.sqrt(rs.det_cartan) ** (2 - k)
        / backend.sqrt(A) ** l
    )
    return InvariantResult(
        phase * scale * Z,
        InvariantMethod.CLOSED_FORM,
        _metadata(md, M.canonical(), euler_number=E, dedekind_total=dedekind_total, terms=terms_needed),
    )


def tau_seifert(
    md: ModularData,
    M: SeifertPresentation,
    method: InvariantMethod = InvariantMethod.MATRIX_FORM,
    signs: Optional[SelfDualSignTable] = None,
    workers: int = 1,
    term_budget: int = TERM_BUDGET,
) -> InvariantResult:
    method = InvariantMethod(method)
    if method is InvariantMethod.MATRIX_FORM:
        return tau_matrix_form(md, M, signs)
    if method is InvariantMethod.CLOSED_FORM:
        return tau_closed_form(md, M, signs, workers=workers, term_budget=term_budget)
    raise ValueError(f"{method.value} is a lens space method")


def lens_matrix(p: int, q: int) -> SL2ZMatrix:
    """U = [[q, b], [p, d]] in SL(2, Z)."""
    if abs(p) <= 1:
        # p = +-1 or 0; d = 0 resp. d = q (then q = +-1)
        d = q if p == 0 else 0
    else:
        d = pow(q, -1, abs(p))
    b = 0 if p == 0 else (q * d - 1) // p
    return SL2ZMatrix(q, b, p, d)


def _check_lens(p: int, q: int) -> None:
    if gcd(p, q) != 1:
        raise NotCoprime(f"L({p},{q}) needs gcd(p, q) = 1")


def _lens_cf(md: ModularData, p: int, q: int) -> InvariantResult:
    if q == 0:
        C, head_sum = ContinuedFraction((0, 0, 0)), 0
    else:
        head = cf_expand(Fraction(-p, q))
        C, head_sum = head + ContinuedFraction((0,)), sum(head.terms)
    sigma = Fraction(head_sum - rademacher_phi(C.matrix()), 3)
    entry = sg_column(md, C, with_s=False)[md.position(md.rho)]
    value = omega_power(md, -3 * sigma) * md.rank_D ** (-len(C)) * entry
    return InvariantResult(value, InvariantMethod.LENS_CF,
                           _metadata(md, f"L({p},{q})", sigma=sigma, expansion=list(C.terms)))


def _lens_rtlens(md: ModularData, p: int, q: int) -> InvariantResult:
    U = lens_matrix(p, q)
    phi = rademacher_phi(U)
    if p == 0:
        entry = rep_bruteforce(md, U)[md.rho, md.rho]
    else:
        entry = rep_row_rho(md, U, md.rho, formula=1)
    return InvariantResult(omega_power(md, phi) * entry, InvariantMethod.LENS_RTLENS,
                           _metadata(md, f"L({p},{q})", phi=phi, U=U.as_list()))


def lens_weyl_coset_sum(md: ModularData, p: int, q: int):
    """The double sum over w and nu of the lens space closed form, without prefactors."""
    rs, r, backend = md.rs, md.r, md.backend
    mats, signs = weyl_arrays(rs)
    rho = np.asarray(rs.rho, dtype=np.int64)
    w_rho = mats @ rho
    nus = coset_reps_array(rs, p)
    rho_pairings = w_rho @ rs.adjugate @ rho
    cross = np.einsum("vi,ij,wj->vw", nus, rs.adjugate, q * rho[None, :] - w_rho)
    numerators = (
        -2 * rho_pairings[None, :]
        + q * r * r * norm_numerators(md, nus)[:, None]
        + 2 * r * cross
    )
    phases = backend.exp_pi_i_array(numerators, p * r * rs.det_cartan) * signs[None, :]
    return backend.fsum(phases)


def lens_prefactor(md: ModularData, p: int, q: int):
    """sign(p)^N i^N (r|p|)^{-l/2} vol^{-1} exp(12 pi i sign(p) s(q,|p|) |rho|^2 / r)."""
    twist = 12 * sign(p) * dedekind_sum(q, abs(p)) * rho_norm_sq(md.rs) / md.r
    return coset_prefactor(md, p) * md.backend.exp_pi_i(twist)


def _lens_asymp(md: ModularData, p: int, q: int) -> InvariantResult:
    if p == 0:
        raise PZero("the Weyl/coset closed form of L(p, q) needs p != 0")
    value = lens_prefactor(md, p, q) * lens_weyl_coset_sum(md, p, q)
    return InvariantResult(value, InvariantMethod.LENS_ASYMP,
                           _metadata(md, f"L({p},{q})", dedekind=dedekind_sum(q, abs(p))))


_LENS_EVALUATORS = {
    InvariantMethod.LENS_CF: _lens_cf,
    InvariantMethod.LENS_RTLENS: _lens_rtlens,
    InvariantMethod.LENS_ASYMP: _lens_asymp,
}


def tau_lens(md: ModularData, p: int, q: int,
             method: InvariantMethod = InvariantMethod.LENS_CF) -> InvariantResult:
    """tau(L(p, q)); L(0, 1) is S^1 x S^2 and L(1, q) is S^3."""
    _check_lens(p, q)
    method = InvariantMethod(method)
    if method not in _LENS_EVALUATORS:
        raise ValueError(f"{method.value} is not a lens space method")
    return _LENS_EVALUATORS[method](md, p, q)


def tau_lens_all(md: ModularData, p: int, q: int) -> List[InvariantResult]:
    """Every lens space method that applies; the closed Weyl/coset form needs p != 0."""
    methods = [m for m in LENS_METHODS if p != 0 or m is not InvariantMethod.LENS_ASYMP]
    return [tau_lens(md, p, q, m) for m in methods]


def methods_agree(
    results: Sequence[InvariantResult],
    rtol: float = AGREEMENT_RTOL,
    atol: float = AGREEMENT_ATOL,
    small: float = SMALL_VALUE_THRESHOLD,
) -> Tuple[bool, float]:
    """Whether all values agree with the first one, and the largest absolute gap."""
    if not results:
        return True, 0.0
    first = results[0].value
    gaps = [abs(complex(res.value) - complex(first)) for res in results[1:]]
    agree = all(close_enough(res.value, first, rtol, atol, small) for res in results[1:])
    return agree, max(gaps, default=0.0)
