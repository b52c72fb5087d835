"""Square matrices whose rows and columns are labelled by alcove weights."""
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple

import numpy as np

from ..lie.root_system import WeightVec


@dataclass(frozen=True, eq=False)
class IndexedMatrix:
    index: Tuple[WeightVec, ...]
    entries: np.ndarray
    _positions: Dict[WeightVec, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.index)
        if self.entries.shape != (n, n):
            raise ValueError(f"entries of shape {self.entries.shape} do not match an index of size {n}")
        object.__setattr__(self, "_positions", {lam: i for i, lam in enumerate(self.index)})

    def position(self, lam: Sequence[int]) -> int:
        return self._positions[tuple(lam)]

    def __contains__(self, lam) -> bool:
        return tuple(lam) in self._positions

    def __getitem__(self, key):
        lam, mu = key
        return self.entries[self.position(lam), self.position(mu)]

    def column(self, mu: Sequence[int]) -> np.ndarray:
        return self.entries[:, self.position(mu)]

    def __matmul__(self, other: "IndexedMatrix") -> "IndexedMatrix":
        if self.index != other.index:
            raise ValueError("cannot multiply matrices over different index sets")
        return IndexedMatrix(self.index, self.entries @ other.entries)

    def scaled(self, factor) -> "IndexedMatrix":
        return IndexedMatrix(self.index, self.entries * factor)

    def dagger(self) -> "IndexedMatrix":
        return IndexedMatrix(self.index, np.conj(self.entries).T)

    def transpose(self) -> "IndexedMatrix":
        return IndexedMatrix(self.index, self.entries.T.copy())

    def to_complex(self) -> np.ndarray:
        return np.vectorize(complex, otypes=[np.complex128])(self.entries)

    def max_abs_diff(self, other: "IndexedMatrix") -> float:
        if self.index != other.index:
            raise ValueError("cannot compare matrices over different index sets")
        if not len(self.index):
            return 0.0
        return float(np.max(np.abs(self.to_complex() - other.to_complex())))

    def power(self, n: int) -> "IndexedMatrix":
        """Non-negative integer power."""
        result = IndexedMatrix(self.index, _identity_like(self.entries))
        for _ in range(n):
            result = result @ self
        return result


def _identity_like(entries: np.ndarray) -> np.ndarray:
    n = entries.shape[0]
    if entries.dtype == object:
        out = np.zeros((n, n), dtype=object)
        out[:] = 0
        for i in range(n):
            out[i, i] = 1
        return out
    return np.eye(n, dtype=entries.dtype)
