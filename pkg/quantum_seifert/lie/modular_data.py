"""Modular data of the quantum group category at level r.

Simple objects are the interior alcove weights I, with the unit object at rho.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..config import DEFAULT_PRECISION
from ..errors import IndexOutOfAlcove
from ..representation.indexed_matrix import IndexedMatrix
from ..utils.numeric import Backend, get_backend, to_pair
from .root_system import (
    RootSystem,
    WeightVec,
    alcove_weights,
    dual_weight,
    rho_norm_sq,
    weyl_arrays,
)


@dataclass(frozen=True, eq=False)
class ModularData:
    rs: RootSystem
    r: int
    backend: Backend
    index_set: Tuple[WeightVec, ...]
    central_charge: Fraction
    rank_D: object
    omega: object
    dims: np.ndarray
    _positions: Dict[WeightVec, int] = field(repr=False)
    _duals: Dict[WeightVec, WeightVec] = field(repr=False)

    @property
    def rho(self) -> WeightVec:
        return self.rs.rho

    @property
    def size(self) -> int:
        return len(self.index_set)

    @property
    def index_array(self) -> np.ndarray:
        return np.array(self.index_set, dtype=np.int64).reshape(-1, self.rs.rank)

    def position(self, lam: Sequence[int]) -> int:
        try:
            return self._positions[tuple(lam)]
        except KeyError:
            raise IndexOutOfAlcove(
                f"{tuple(lam)} is not an interior alcove weight of {self.rs.name} at level {self.r}"
            ) from None

    def dual(self, lam: Sequence[int]) -> WeightVec:
        self.position(lam)
        return self._duals[tuple(lam)]

    def __reduce__(self):
        return (build_modular_data, (self.rs, self.r, self.backend.name))


def sine_product(rs: RootSystem, lam: Sequence[int], r: int, backend: Backend):
    # prod over positive roots of sin(pi <lam, alpha> / r); <lam, alpha> = n . lam in root coords
    result = backend.real(1)
    for n in rs.positive_roots_root_coords:
        result = result * backend.sin_pi(Fraction(sum(a * b for a, b in zip(n, lam)), r))
    return result


@lru_cache(maxsize=None)
def build_modular_data(rs: RootSystem, r: int, precision: str = DEFAULT_PRECISION) -> ModularData:
    backend = get_backend(precision)
    index_set = tuple(alcove_weights(rs, r))
    l = rs.rank
    central_charge = Fraction((r - rs.dual_coxeter) * rs.dim_g, r)
    rho_sines = sine_product(rs, rs.rho, r, backend)
    rank_D = backend.sqrt(r) ** l * backend.sqrt(rs.det_cartan) / (2 ** rs.num_pos_roots * rho_sines)
    dims = np.empty(len(index_set), dtype=backend.dtype)
    for i, lam in enumerate(index_set):
        dims[i] = sine_product(rs, lam, r, backend) / rho_sines
    return ModularData(
        rs=rs,
        r=r,
        backend=backend,
        index_set=index_set,
        central_charge=central_charge,
        rank_D=rank_D,
        omega=backend.exp_pi_i(central_charge / 12),
        dims=dims,
        _positions={lam: i for i, lam in enumerate(index_set)},
        _duals={lam: dual_weight(rs, lam) for lam in index_set},
    )


def rank(md: ModularData):
    return md.rank_D


def qdim(md: ModularData, lam: Sequence[int]):
    return md.dims[md.position(lam)]


def omega_power(md: ModularData, x: Fraction):
    """omega^x = exp(2 pi i c x / 24) for rational x."""
    return md.backend.exp_pi_i(md.central_charge * Fraction(x) / 12)


def norm_numerators(md: ModularData, weights: np.ndarray) -> np.ndarray:
    """det(cartan) * |lam|^2 for each row."""
    return np.einsum("ij,jk,ik->i", weights, md.rs.adjugate, weights)


def twist_exponent(md: ModularData, lam: Sequence[int]) -> Fraction:
    """v_lam = exp(pi i * exponent) with exponent = (|lam|^2 - |rho|^2) / r."""
    rs = md.rs
    lam = np.asarray(lam, dtype=np.int64)
    return (Fraction(int(lam @ rs.adjugate @ lam), rs.det_cartan) - rho_norm_sq(rs)) / md.r


def twist(md: ModularData, lam: Sequence[int]):
    md.position(lam)
    return md.backend.exp_pi_i(twist_exponent(md, lam))


def twist_power(md: ModularData, lam: Sequence[int], m: int):
    """T_{lam lam}^m as a single exact phase."""
    return md.backend.exp_pi_i(m * twist_exponent(md, lam))


def theta_exponent(md: ModularData, lam: Sequence[int]) -> Fraction:
    """R(Theta)_{lam lam} = exp(pi i * (|lam|^2 / r - |rho|^2 / h))."""
    rs = md.rs
    lam = np.asarray(lam, dtype=np.int64)
    return Fraction(int(lam @ rs.adjugate @ lam), rs.det_cartan * md.r) - rho_norm_sq(rs) / rs.dual_coxeter


def anomaly(md: ModularData):
    """Delta = sum_i v_i^{-1} dim(i)^2."""
    terms = [
        md.backend.exp_pi_i(-twist_exponent(md, lam)) * md.dims[i] ** 2
        for i, lam in enumerate(md.index_set)
    ]
    return md.backend.fsum(terms)


def xi_entries(md: ModularData, rows: Sequence[WeightVec], cols: Sequence[WeightVec]) -> np.ndarray:
    """R(Xi) entries on arbitrary weights by the Weyl-group sum.

    i^{|D+|} r^{-l/2} (det cartan)^{-1/2} sum_w det(w) exp(-2 pi i <w(lam), mu> / r)
    """
    rs, backend, r = md.rs, md.backend, md.r
    mats, signs = weyl_arrays(rs)
    cols_arr = np.array(cols, dtype=np.int64).reshape(-1, rs.rank)
    prefactor = (
        backend.exp_pi_i(Fraction(rs.num_pos_roots, 2))
        / (backend.sqrt(r) ** rs.rank * backend.sqrt(rs.det_cartan))
    )
    out = backend.zeros(len(rows), len(cols))
    for i, lam in enumerate(rows):
        images = mats @ np.asarray(lam, dtype=np.int64)
        pairings = images @ rs.adjugate @ cols_arr.T
        phases = backend.exp_pi_i_array(-2 * pairings, r * rs.det_cartan)
        out[i, :] = backend.fsum_columns(phases * signs[:, None]) * prefactor
    return out


def theta_diagonal(md: ModularData, weights: Sequence[WeightVec]) -> np.ndarray:
    out = np.empty(len(weights), dtype=md.backend.dtype)
    for i, lam in enumerate(weights):
        out[i] = md.backend.exp_pi_i(theta_exponent(md, lam))
    return out


@lru_cache(maxsize=None)
def s_matrix(md: ModularData) -> IndexedMatrix:
    """S = D * R(Xi)."""
    return IndexedMatrix(md.index_set, xi_entries(md, md.index_set, md.index_set) * md.rank_D)


@lru_cache(maxsize=None)
def t_matrix(md: ModularData) -> IndexedMatrix:
    """T = omega * R(Theta), diagonal with entries v_lam."""
    entries = md.backend.zeros(md.size, md.size)
    for i, lam in enumerate(md.index_set):
        entries[i, i] = md.backend.exp_pi_i(twist_exponent(md, lam))
    return IndexedMatrix(md.index_set, entries)


def charge_conjugation(md: ModularData) -> IndexedMatrix:
    entries = md.backend.zeros(md.size, md.size)
    for i, lam in enumerate(md.index_set):
        entries[i, md.position(md.dual(lam))] = 1
    return IndexedMatrix(md.index_set, entries)


def modular_data_summary(md: ModularData, include_matrices: bool = False) -> Dict:
    """JSON-ready dump with complex numbers as [re, im] pairs."""
    summary = {
        "algebra": md.rs.name,
        "level": md.r,
        "precision": md.backend.name,
        "index_set": [list(lam) for lam in md.index_set],
        "rank_D": float(md.rank_D.real),
        "omega": to_pair(md.omega),
        "central_charge": str(md.central_charge),
        "dims": [float(x.real) for x in md.dims],
        "twists": [to_pair(twist(md, lam)) for lam in md.index_set],
        "duals": [list(md.dual(lam)) for lam in md.index_set],
    }
    if include_matrices:
        summary["S"] = [[to_pair(x) for x in row] for row in s_matrix(md).entries]
        summary["T"] = [[to_pair(x) for x in row] for row in t_matrix(md).entries]
    return summary


def structural_checks(md: ModularData) -> Dict[str, float]:
    """Residuals of the identities the modular data must satisfy."""
    backend = md.backend
    D = md.rank_D
    S = s_matrix(md)
    T = t_matrix(md)
    unit = S.scaled(1 / D)
    identity = IndexedMatrix(md.index_set, backend.eye(md.size))
    rho_row = S.column(md.rho)
    sum_dims_sq = backend.fsum([x ** 2 for x in md.dims])
    diag = T.to_complex()
    return {
        "rank_squared_vs_sum_dims": abs(complex(D ** 2 - sum_dims_sq)) / abs(complex(D ** 2)),
        "anomaly_times_omega_cubed": abs(complex(anomaly(md) / D * md.omega ** 3) - 1),
        "s_symmetry": S.max_abs_diff(S.transpose()),
        "s_unitarity": (unit @ unit.dagger()).max_abs_diff(identity),
        "t_off_diagonal": float(np.max(np.abs(diag - np.diag(np.diag(diag))))),
        "t_unit_modulus": float(np.max(np.abs(np.abs(np.diag(diag)) - 1))),
        "s_rho_row_vs_dims": float(max(abs(complex(a) - complex(b)) for a, b in zip(rho_row, md.dims))),
    }


def omega_forms_agree(md: ModularData) -> float:
    """|exp(2 pi i c/24) - exp(pi i |rho|^2/h) exp(-pi i |rho|^2/r)|."""
    rs = md.rs
    rho_sq = rho_norm_sq(rs)
    other = md.backend.exp_pi_i(rho_sq / rs.dual_coxeter - rho_sq / md.r)
    return abs(complex(md.omega - other))

