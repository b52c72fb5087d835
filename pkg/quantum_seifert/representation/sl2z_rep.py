"""The level-r representation of SL(2, Z) on the span of the alcove weights.

Three ways to get at R(U): multiplying generator matrices along a word
(the reference path), the closed coset-sum formula for full matrices, and
two closed formulas for the column at rho. The iterated generator sums
T^C from the continued-fraction recursion are here as well.
"""
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import CZero, ZeroPivot
from ..lie.modular_data import (
    ModularData,
    norm_numerators,
    omega_power,
    s_matrix,
    theta_diagonal,
    theta_exponent,
    twist_power,
    xi_entries,
)
from ..lie.root_system import (
    WeightVec,
    closed_alcove_weights,
    coset_reps_array,
    rho_norm_sq,
    weyl_arrays,
)
from ..number_theory.arith import (
    ContinuedFraction,
    SL2ZMatrix,
    decompose_sl2z,
    rademacher_phi,
    sign,
)
from .indexed_matrix import IndexedMatrix

Word = List[Tuple[str, int]]


def gen_xi(md: ModularData) -> IndexedMatrix:
    return IndexedMatrix(md.index_set, xi_entries(md, md.index_set, md.index_set))


def gen_theta(md: ModularData) -> IndexedMatrix:
    entries = md.backend.zeros(md.size, md.size)
    for i, value in enumerate(theta_diagonal(md, md.index_set)):
        entries[i, i] = value
    return IndexedMatrix(md.index_set, entries)


def _theta_power(md: ModularData, n: int) -> IndexedMatrix:
    entries = md.backend.zeros(md.size, md.size)
    for i, lam in enumerate(md.index_set):
        entries[i, i] = md.backend.exp_pi_i(n * theta_exponent(md, lam))
    return IndexedMatrix(md.index_set, entries)


def _xi_power(md: ModularData, n: int) -> IndexedMatrix:
    # R(Xi)^4 = 1
    return gen_xi(md).power(n % 4)


def rep_word(md: ModularData, word: Sequence[Tuple[str, int]]) -> IndexedMatrix:
    """R of a product of generator powers, read left to right."""
    result = IndexedMatrix(md.index_set, md.backend.eye(md.size))
    for generator, power in word:
        if generator == "xi":
            factor = _xi_power(md, power)
        elif generator == "theta":
            factor = _theta_power(md, power)
        else:
            raise ValueError(f"unknown generator '{generator}'")
        result = result @ factor
    return result


def b_matrix_word(C: ContinuedFraction) -> Word:
    """Word for Theta^{m_t} Xi ... Theta^{m_1} Xi."""
    word: Word = []
    for m in reversed(C.terms):
        word.extend([("theta", m), ("xi", 1)])
    return word


def sl2z_word(U: SL2ZMatrix) -> Word:
    """A generator word for U built from its decomposition eps * B^C * Theta^n."""
    eps, C, n = decompose_sl2z(U)
    word: Word = [("xi", 2)] if eps == -1 else []
    return word + b_matrix_word(C) + [("theta", n)]


def rep_bruteforce(md: ModularData, U: SL2ZMatrix) -> IndexedMatrix:
    return rep_word(md, sl2z_word(U))


def coset_prefactor(md: ModularData, c: int):
    """i^{|D+|} sign(c)^{|D+|} / ((r|c|)^{l/2} vol(root lattice))."""
    rs, backend = md.rs, md.backend
    return (
        backend.exp_pi_i(Fraction(rs.num_pos_roots, 2))
        * sign(c) ** rs.num_pos_roots
        / (backend.sqrt(md.r * abs(c)) ** rs.rank * backend.sqrt(rs.det_cartan))
    )


def _phi_phase(md: ModularData, U: SL2ZMatrix):
    """exp(-pi i |rho|^2 Phi(U) / h)."""
    return md.backend.exp_pi_i(-rho_norm_sq(md.rs) * rademacher_phi(U) / md.rs.dual_coxeter)


def rep_closed(md: ModularData, U: SL2ZMatrix) -> Tuple[int, IndexedMatrix]:
    """Closed coset-sum formula; the matrix returned equals R(eps * U)."""
    a, c, d = U.a, U.c, U.d
    if c == 0:
        raise CZero("closed formula needs c != 0; use a Theta power instead")
    eps, _, _ = decompose_sl2z(U)
    rs, backend, r = md.rs, md.backend, md.r
    mats, signs = weyl_arrays(rs)
    nus = coset_reps_array(rs, c)
    mus = md.index_array
    mu_norms = norm_numerators(md, mus)
    # (|W|, l, |I|) images w(mu)
    images = np.einsum("wij,mj->wim", mats, mus)
    denominator = r * c * rs.det_cartan
    pref = coset_prefactor(md, eps * c) * _phi_phase(md, U)

    entries = backend.zeros(md.size, md.size)
    for i, lam in enumerate(md.index_set):
        x = np.asarray(lam, dtype=np.int64) + r * nus
        x_norms = norm_numerators(md, x)
        pairings = np.einsum("vi,ij,wjm->vwm", x, rs.adjugate, images)
        numerators = a * x_norms[:, None, None] - 2 * eps * pairings + d * mu_norms[None, None, :]
        phases = backend.exp_pi_i_array(numerators, denominator) * signs[None, :, None]
        entries[i, :] = backend.fsum_columns(phases.reshape(-1, md.size)) * pref
    return eps, IndexedMatrix(md.index_set, entries)


def rep_row_rho(md: ModularData, U: SL2ZMatrix, lam: Sequence[int], formula: int = 1):
    """R(U)_{lam, rho} by either closed formula; no sign ambiguity here."""
    a, b, c, d = U.a, U.b, U.c, U.d
    if c == 0:
        raise CZero("closed formula needs c != 0")
    md.position(lam)
    rs, backend, r = md.rs, md.backend, md.r
    mats, signs = weyl_arrays(rs)
    nus = coset_reps_array(rs, c)
    rho = np.asarray(rs.rho, dtype=np.int64)
    lam = np.asarray(lam, dtype=np.int64)
    pref = coset_prefactor(md, c) * _phi_phase(md, U)

    if formula == 1:
        x = rho + r * nus
        w_lam = mats @ lam
        pairings = x @ rs.adjugate @ w_lam.T
        numerators = d * norm_numerators(md, x)[:, None] - 2 * pairings
        lam_phase = backend.exp_pi_i(Fraction(a * int(lam @ rs.adjugate @ lam), r * c * rs.det_cartan))
        phases = backend.exp_pi_i_array(numerators, r * c * rs.det_cartan) * signs[None, :]
        return pref * lam_phase * backend.fsum(phases)
    if formula == 2:
        if a == 0:
            raise ZeroPivot("second formula needs a != 0")
        w_rho = mats @ rho
        # |lam + r nu - w(rho)/a|^2 a^2 = |a lam + a r nu - w(rho)|^2
        y = (a * lam + a * r * nus)[:, None, :] - w_rho[None, :, :]
        numerators = np.einsum("vwi,ij,vwj->vw", y, rs.adjugate, y)
        rho_phase = backend.exp_pi_i(b * rho_norm_sq(rs) / (r * a))
        phases = backend.exp_pi_i_array(numerators, r * c * a * rs.det_cartan) * signs[None, :]
        return pref * rho_phase * backend.fsum(phases)
    raise ValueError(f"formula must be 1 or 2, got {formula}")


def _theta_powers(md: ModularData, weights: Sequence[WeightVec], m: int) -> np.ndarray:
    return np.array([md.backend.exp_pi_i(m * theta_exponent(md, lam)) for lam in weights],
                    dtype=md.backend.dtype)


def t_calC_bruteforce(
    md: ModularData,
    C: ContinuedFraction,
    lam_start: Sequence[int],
    lam_end: Sequence[int],
    closed_alcove: bool = True,
):
    """Iterated sum of Xi Theta^{m_t} Xi ... Theta^{m_1} Xi entries over alcove weights.

    The intermediate weights run over the closed alcove, or over its interior
    when closed_alcove is False; boundary weights contribute nothing.
    """
    weights: List[WeightVec] = (
        closed_alcove_weights(md.rs, md.r) if closed_alcove else list(md.index_set)
    )
    xi = xi_entries(md, weights, weights)
    vector = xi_entries(md, weights, [tuple(lam_start)])[:, 0]
    for k, m in enumerate(C.terms):
        vector = _theta_powers(md, weights, m) * vector
        if k < len(C.terms) - 1:
            vector = xi @ vector
    closing = xi_entries(md, [tuple(lam_end)], weights)[0]
    return md.backend.fsum(closing * vector)


def t_calC_closed(md: ModularData, C: ContinuedFraction, lam_start: Sequence[int], lam_end: Sequence[int]):
    """Closed coset-sum evaluation of T^C, valid when every a_k is nonzero."""
    a_seq, _, c_seq, _ = C.sequences()
    t = len(C.terms)
    if t == 0:
        raise ZeroPivot("empty continued fraction")
    for k in range(1, t + 1):
        if a_seq[k] == 0:
            raise ZeroPivot(f"a_{k} = 0 for continued fraction {C.terms}")
    rs, backend, r = md.rs, md.backend, md.r
    a_t, c_t = a_seq[t], c_seq[t]
    mats, signs = weyl_arrays(rs)
    lam0 = np.asarray(lam_start, dtype=np.int64)
    lam_end = np.asarray(lam_end, dtype=np.int64)
    mus = coset_reps_array(rs, a_t)
    w_lam0 = mats @ lam0
    # c_t |lam_end + r mu + w(lam0)/c_t|^2 / a_t = |c_t lam_end + r c_t mu + w(lam0)|^2 / (a_t c_t)
    x = (c_t * lam_end + r * c_t * mus)[:, None, :] + w_lam0[None, :, :]
    numerators = -np.einsum("mwi,ij,mwj->mw", x, rs.adjugate, x)
    phases = backend.exp_pi_i_array(numerators, a_t * c_t * r * rs.det_cartan) * signs[None, :]

    rho_sq = rho_norm_sq(rs)
    lam0_sq = Fraction(int(lam0 @ rs.adjugate @ lam0), rs.det_cartan)
    tail = sum((Fraction(1, a_seq[i - 1] * a_seq[i]) for i in range(1, t)), Fraction(0))
    K = (
        backend.exp_pi_i(Fraction((t + 1) * rs.num_pos_roots, 2))
        / (backend.sqrt(r * abs(a_t)) ** rs.rank * backend.sqrt(rs.det_cartan))
        * backend.exp_pi_i(Fraction(rs.rank * C.sign_changes(), 4))
        * backend.exp_pi_i(-sum(C.terms) * rho_sq / rs.dual_coxeter)
        * backend.exp_pi_i(-tail * lam0_sq / r)
    )
    return K * backend.fsum(phases)


def sg_column(md: ModularData, C: ContinuedFraction, with_s: bool = True) -> np.ndarray:
    """Column rho of S^m G^C with G^C = T^{m_t} S ... T^{m_1} S, m = 1 if with_s."""
    S = s_matrix(md).entries
    vector = md.backend.zeros(md.size, 1)[:, 0]
    vector[md.position(md.rho)] = 1
    for m in C.terms:
        powers = np.array([twist_power(md, lam, m) for lam in md.index_set], dtype=md.backend.dtype)
        vector = powers * (S @ vector)
    if with_s:
        vector = S @ vector
    return vector


def sg_column_from_rep(md: ModularData, C: ContinuedFraction, with_s: bool = True) -> np.ndarray:
    """The same column as D^{m+n} omega^{sum a} (Xi^m Theta^{a_n} Xi ... Theta^{a_1} Xi)_{., rho}."""
    word = ([("xi", 1)] if with_s else []) + b_matrix_word(C)
    scale = md.rank_D ** (int(with_s) + len(C.terms)) * omega_power(md, sum(C.terms))
    return rep_word(md, word).column(md.rho) * scale
