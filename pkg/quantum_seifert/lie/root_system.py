"""Simply-laced root systems in fundamental-weight coordinates.

Every lattice vector is an integer tuple of coefficients in the basis of
fundamental weights. Simple roots are the columns of the Cartan matrix and
inner products are exact rationals taken through the inverse Cartan matrix.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np
import sympy

from ..config import WEYL_ENUMERATION_CAP
from ..errors import LevelTooSmall, UnsupportedType, WeylGroupTooLarge, ZeroModulus

WeightVec = Tuple[int, ...]

_E_WEYL_ORDERS = {6: 51840, 7: 2903040, 8: 696729600}


def dynkin_to_cartan(family: str, rank: int) -> np.ndarray:
    """Cartan matrix of a simply-laced Dynkin diagram."""
    A = 2 * np.eye(rank, dtype=np.int64)
    if rank == 1:
        return A
    if family == "A":
        A[range(rank - 1), range(1, rank)] = -1
        A[range(1, rank), range(rank - 1)] = -1
    elif family == "D":
        A[range(rank - 2), range(1, rank - 1)] = -1
        A[range(1, rank - 1), range(rank - 2)] = -1
        # final node hangs off the third-to-last one
        A[-3, -1] = -1
        A[-1, -3] = -1
    elif family == "E":
        A[range(rank - 2), range(1, rank - 1)] = -1
        A[range(1, rank - 1), range(rank - 2)] = -1
        A[-4, -1] = -1
        A[-1, -4] = -1
    return A


@dataclass(frozen=True, eq=False)
class WeylElement:
    matrix: np.ndarray
    det_sign: int
    length: int

    def apply(self, v: Sequence[int]) -> WeightVec:
        return tuple(int(x) for x in self.matrix @ np.asarray(v, dtype=np.int64))


@dataclass(frozen=True, eq=False)
class RootSystem:
    family: str
    rank: int
    cartan: np.ndarray
    gram_weights: Tuple[Tuple[Fraction, ...], ...]
    # det(cartan) * inverse cartan, so <x, y> = x^T adjugate y / det_cartan
    adjugate: np.ndarray
    det_cartan: int
    simple_roots: Tuple[WeightVec, ...]
    positive_roots: Tuple[WeightVec, ...]
    positive_roots_root_coords: Tuple[Tuple[int, ...], ...]
    highest_root: WeightVec
    marks: Tuple[int, ...]
    rho: WeightVec
    dual_coxeter: int
    num_pos_roots: int
    dim_g: int
    longest_element: np.ndarray

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def vol_root_lattice(self) -> float:
        return float(np.sqrt(self.det_cartan))

    @property
    def vol_weight_lattice(self) -> float:
        return float(1 / np.sqrt(self.det_cartan))

    def __reduce__(self):
        return (build_root_system, (self.family, self.rank))


def _validate_type(family: str, rank: int) -> None:
    if family == "A" and rank >= 1:
        return
    if family == "D" and rank >= 4:
        return
    if family == "E" and rank in (6, 7, 8):
        return
    if family in ("B", "C", "F", "G"):
        raise UnsupportedType(f"{family}{rank} is not simply laced; only A, D and E are supported")
    raise UnsupportedType(f"{family}{rank} is not a valid simply-laced type")


def _reflection_matrices(cartan: np.ndarray) -> List[np.ndarray]:
    # s_i(lam) = lam - lam_i * alpha_i, with alpha_i the i-th Cartan column
    rank = cartan.shape[0]
    mats = []
    for i in range(rank):
        s = np.eye(rank, dtype=np.int64)
        s[:, i] -= cartan[:, i]
        mats.append(s)
    return mats


def _positive_roots_root_coords(cartan: np.ndarray) -> List[Tuple[int, ...]]:
    rank = cartan.shape[0]
    simple = [tuple(int(k == i) for k in range(rank)) for i in range(rank)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            pairing = cartan @ np.asarray(beta, dtype=np.int64)
            for i in range(rank):
                image = list(beta)
                image[i] -= int(pairing[i])
                image = tuple(image)
                if all(x >= 0 for x in image) and any(image) and image not in found:
                    found.add(image)
                    nxt.append(image)
        frontier = nxt
    return sorted(found, key=lambda n: (sum(n), n))


def _longest_element(cartan: np.ndarray) -> np.ndarray:
    # w0 is the unique element taking -rho to rho
    refl = _reflection_matrices(cartan)
    rank = cartan.shape[0]
    v = -np.ones(rank, dtype=np.int64)
    w = np.eye(rank, dtype=np.int64)
    while (v < 0).any():
        i = int(np.argmax(v < 0))
        v = refl[i] @ v
        w = refl[i] @ w
    return w


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    family = family.upper()
    _validate_type(family, rank)
    cartan = dynkin_to_cartan(family, rank)
    sym = sympy.Matrix(cartan.tolist())
    det = int(sym.det())
    inverse = sym.inv()
    gram = tuple(
        tuple(Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(rank))
        for i in range(rank)
    )
    adjugate = np.array([[int(g * det) for g in row] for row in gram], dtype=np.int64)

    root_coords = _positive_roots_root_coords(cartan)
    positive = tuple(tuple(int(x) for x in cartan @ np.asarray(n, dtype=np.int64)) for n in root_coords)
    top = max(root_coords, key=sum)
    num_pos = len(root_coords)
    return RootSystem(
        family=family,
        rank=rank,
        cartan=cartan,
        gram_weights=gram,
        adjugate=adjugate,
        det_cartan=det,
        simple_roots=tuple(tuple(int(x) for x in cartan[:, i]) for i in range(rank)),
        positive_roots=positive,
        positive_roots_root_coords=tuple(root_coords),
        highest_root=tuple(int(x) for x in cartan @ np.asarray(top, dtype=np.int64)),
        marks=tuple(top),
        rho=(1,) * rank,
        dual_coxeter=sum(top) + 1,
        num_pos_roots=num_pos,
        dim_g=rank + 2 * num_pos,
        longest_element=_longest_element(cartan),
    )


def inner_numerator(rs: RootSystem, x: Sequence[int], y: Sequence[int]) -> int:
    """det(cartan) * <x, y>, always an integer."""
    return int(np.asarray(x, dtype=np.int64) @ rs.adjugate @ np.asarray(y, dtype=np.int64))


def inner(rs: RootSystem, x: Sequence[int], y: Sequence[int]) -> Fraction:
    return Fraction(inner_numerator(rs, x, y), rs.det_cartan)


def norm_sq(rs: RootSystem, x: Sequence[int]) -> Fraction:
    return inner(rs, x, x)


def rho_norm_sq(rs: RootSystem) -> Fraction:
    return norm_sq(rs, rs.rho)


def in_root_lattice(rs: RootSystem, v: Sequence[int]) -> bool:
    """True when v lies in the column span of the Cartan matrix over Z."""
    coords = rs.adjugate @ np.asarray(v, dtype=np.int64)
    return bool((coords % rs.det_cartan == 0).all())


def weyl_group_order(rs: RootSystem) -> int:
    if rs.family == "A":
        return factorial(rs.rank + 1)
    if rs.family == "D":
        return 2 ** (rs.rank - 1) * factorial(rs.rank)
    return _E_WEYL_ORDERS[rs.rank]


def weyl_elements(rs: RootSystem, cap: int = WEYL_ENUMERATION_CAP) -> List[WeylElement]:
    """All Weyl group elements by breadth-first closure, identity first."""
    order = weyl_group_order(rs)
    if order > cap:
        raise WeylGroupTooLarge(order, cap)
    return list(_weyl_elements(rs))


@lru_cache(maxsize=None)
def _weyl_elements(rs: RootSystem) -> Tuple[WeylElement, ...]:
    refl = _reflection_matrices(rs.cartan)
    identity = np.eye(rs.rank, dtype=np.int64)
    seen = {identity.tobytes()}
    elements = [WeylElement(identity, 1, 0)]
    frontier = [identity]
    length = 0
    while frontier:
        length += 1
        nxt = []
        for w in frontier:
            for s in refl:
                m = s @ w
                key = m.tobytes()
                if key not in seen:
                    seen.add(key)
                    elements.append(WeylElement(m, (-1) ** length, length))
                    nxt.append(m)
        frontier = nxt
    return tuple(elements)


@lru_cache(maxsize=None)
def weyl_arrays(rs: RootSystem, cap: int = WEYL_ENUMERATION_CAP) -> Tuple[np.ndarray, np.ndarray]:
    """Stacked Weyl matrices (|W|, l, l) and their determinant signs."""
    elements = weyl_elements(rs, cap)
    mats = np.stack([w.matrix for w in elements])
    signs = np.array([w.det_sign for w in elements], dtype=np.int64)
    return mats, signs


def weyl_orbit_images(rs: RootSystem, v: Sequence[int], cap: int = WEYL_ENUMERATION_CAP) -> np.ndarray:
    """w(v) for every Weyl element w, as a (|W|, l) integer array."""
    mats, _ = weyl_arrays(rs, cap)
    return mats @ np.asarray(v, dtype=np.int64)


def _alcove_points(rs: RootSystem, bound: int, lower: int) -> Iterator[WeightVec]:
    # points with coords >= lower and sum marks_i * coord_i <= bound, in lexicographic order
    marks = rs.marks
    rank = rs.rank

    def rec(i: int, budget: int, prefix: List[int]) -> Iterator[WeightVec]:
        if i == rank:
            yield tuple(prefix)
            return
        rest = sum(marks[i + 1:]) * lower
        x = lower
        while marks[i] * x + rest <= budget:
            prefix.append(x)
            yield from rec(i + 1, budget - marks[i] * x, prefix)
            prefix.pop()
            x += 1

    yield from rec(0, bound, [])


def alcove_weights(rs: RootSystem, r: int) -> List[WeightVec]:
    """Interior points of the level-r alcove: lam_i >= 1 and <lam, alpha_0> <= r - 1."""
    if r < rs.dual_coxeter:
        raise LevelTooSmall(r, rs.dual_coxeter)
    return list(_alcove_points(rs, r - 1, 1))


def closed_alcove_weights(rs: RootSystem, r: int) -> List[WeightVec]:
    """Closed alcove points: lam_i >= 0 and <lam, alpha_0> <= r."""
    return list(_alcove_points(rs, r, 0))


def is_interior(rs: RootSystem, lam: Sequence[int], r: int) -> bool:
    return all(x >= 1 for x in lam) and sum(m * x for m, x in zip(rs.marks, lam)) <= r - 1


def coset_reps_root_lattice(rs: RootSystem, c: int) -> List[WeightVec]:
    """Representatives sum n_i alpha_i, 0 <= n_i < |c|, of the root lattice modulo c times itself."""
    if c == 0:
        raise ZeroModulus("coset modulus must be nonzero")
    return [
        tuple(int(x) for x in rs.cartan @ np.asarray(n, dtype=np.int64))
        for n in product(range(abs(c)), repeat=rs.rank)
    ]


def coset_reps_array(rs: RootSystem, c: int) -> np.ndarray:
    return np.array(coset_reps_root_lattice(rs, c), dtype=np.int64).reshape(-1, rs.rank)


def dual_weight(rs: RootSystem, lam: Sequence[int]) -> WeightVec:
    """lam* = -w0(lam - rho) + rho, which equals -w0(lam) since w0(rho) = -rho."""
    return tuple(int(x) for x in -(rs.longest_element @ np.asarray(lam, dtype=np.int64)))


def describe(rs: RootSystem) -> Dict:
    """JSON-ready summary of a root system."""
    return {
        "family": rs.family,
        "rank": rs.rank,
        "cartan": rs.cartan.tolist(),
        "gram_weights": [[str(x) for x in row] for row in rs.gram_weights],
        "simple_roots": [list(a) for a in rs.simple_roots],
        "positive_roots": [list(a) for a in rs.positive_roots],
        "highest_root": list(rs.highest_root),
        "rho": list(rs.rho),
        "dual_coxeter": rs.dual_coxeter,
        "num_pos_roots": rs.num_pos_roots,
        "vol_root_lattice": rs.vol_root_lattice,
        "vol_weight_lattice": rs.vol_weight_lattice,
        "dim_g": rs.dim_g,
        "weyl_group_order": weyl_group_order(rs),
        "det_cartan": rs.det_cartan,
    }
