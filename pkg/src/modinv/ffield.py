"""Exact arithmetic in the prime field F_p and dense linear algebra over it.

The modulus is a runtime parameter everywhere (the CLI sweeps small primes).
Matrices are dense int64 numpy arrays reduced mod p; elimination is plain
Gaussian reduction with deterministic pivoting (first nonzero entry scanning
top to bottom), so echelon forms and kernel bases are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatch, DivisionByZero, ModulusMismatch


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    """Validate a modulus by trial division and return it."""
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"modulus must be an integer prime >= 2, got {p!r}")
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"modulus {p} is not prime (divisible by {d})")
        d += 1
    return p


def inverse_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise DivisionByZero(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


@dataclass(frozen=True)
class FpScalar:
    """An element of F_p, stored as its representative in [0, p)."""

    value: int
    p: int

    def __post_init__(self) -> None:
        check_prime(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def _check(self, other: "FpScalar") -> None:
        if not isinstance(other, FpScalar):
            raise TypeError(f"expected FpScalar, got {type(other).__name__}")
        if other.p != self.p:
            raise ModulusMismatch(f"mixed moduli {self.p} and {other.p}")

    def __add__(self, other: "FpScalar") -> "FpScalar":
        self._check(other)
        return FpScalar(self.value + other.value, self.p)

    def __sub__(self, other: "FpScalar") -> "FpScalar":
        self._check(other)
        return FpScalar(self.value - other.value, self.p)

    def __mul__(self, other: "FpScalar") -> "FpScalar":
        self._check(other)
        return FpScalar(self.value * other.value, self.p)

    def __truediv__(self, other: "FpScalar") -> "FpScalar":
        self._check(other)
        return FpScalar(self.value * inverse_mod(other.value, self.p), self.p)

    def __pow__(self, exponent: int) -> "FpScalar":
        if exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        return FpScalar(pow(self.value, exponent, self.p), self.p)

    def __neg__(self) -> "FpScalar":
        return FpScalar(-self.value, self.p)

    def inverse(self) -> "FpScalar":
        return FpScalar(inverse_mod(self.value, self.p), self.p)

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.p})"


def _as_array(entries, p: int) -> np.ndarray:
    arr = np.asarray(entries, dtype=np.int64)
    return np.mod(arr, p)


def rref_array(arr: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``arr`` mod p.

    Returns the reduced matrix and the strictly increasing pivot column list.
    """
    a = np.mod(np.asarray(arr, dtype=np.int64), p).copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = inverse_mod(int(a[r, c]), p)
        a[r] = (a[r] * inv) % p
        other = np.nonzero(a[:, c])[0]
        other = other[other != r]
        if other.size:
            a[other] = (a[other] - np.outer(a[other, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_array(arr: np.ndarray, p: int) -> int:
    if arr.size == 0:
        return 0
    return len(rref_array(arr, p)[1])


def kernel_array(arr: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of the right null space; one vector per free column.

    Each basis vector carries a distinguished 1 in its free column and is
    supported on that column plus the pivot columns.
    """
    a = np.asarray(arr, dtype=np.int64)
    nrows, ncols = a.shape
    if nrows == 0:
        return [np.eye(ncols, dtype=np.int64)[i] for i in range(ncols)]
    reduced, pivots = rref_array(a, p)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = np.zeros(ncols, dtype=np.int64)
        v[free] = 1
        for row, pc in enumerate(pivots):
            v[pc] = (-int(reduced[row, free])) % p
        basis.append(v)
    return basis


def mod_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact a @ b mod p; routes through float BLAS when provably exact."""
    inner = a.shape[1]
    if inner and (p - 1) * (p - 1) * inner < 2**52:
        prod = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    else:
        prod = a @ b
    return np.mod(prod, p)


class FpMatrix:
    """Dense matrix over F_p with exact elimination helpers."""

    def __init__(self, p: int, entries) -> None:
        self.p = check_prime(p)
        arr = _as_array(entries, p)
        if arr.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d array, got shape {arr.shape}")
        self.array = arr

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    def _check(self, other: "FpMatrix") -> None:
        if other.p != self.p:
            raise ModulusMismatch(f"mixed moduli {self.p} and {other.p}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.array.shape == other.array.shape and bool(
            np.array_equal(self.array, other.array)
        )

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.array.shape} by {other.array.shape}")
        return FpMatrix(self.p, mod_matmul(self.array, other.array, self.p))

    def rref(self) -> tuple["FpMatrix", list[int], int]:
        reduced, pivots = rref_array(self.array, self.p)
        return FpMatrix(self.p, reduced), pivots, len(pivots)

    def rank(self) -> int:
        return rank_array(self.array, self.p)

    def kernel_basis(self) -> list[np.ndarray]:
        return kernel_array(self.array, self.p)

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, shape={self.array.shape})"


class RowSpan:
    """Incrementally built echelon row space over F_p."""

    def __init__(self, p: int, ncols: int) -> None:
        self.p = p
        self.ncols = ncols
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vector: np.ndarray) -> np.ndarray:
        v = np.mod(np.asarray(vector, dtype=np.int64), self.p)
        for row, pc in zip(self.rows, self.pivots):
            c = int(v[pc])
            if c:
                v = (v - c * row) % self.p
        return v

    def add(self, vector: np.ndarray) -> bool:
        """Insert a vector; returns True when it enlarged the span."""
        v = self.reduce(vector)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        pivot = int(nz[0])
        v = v * inverse_mod(int(v[pivot]), self.p) % self.p
        # keep rows sorted by pivot so reduction stays one forward sweep
        at = 0
        while at < len(self.pivots) and self.pivots[at] < pivot:
            at += 1
        self.rows.insert(at, v)
        self.pivots.insert(at, pivot)
        return True

    def contains(self, vector: np.ndarray) -> bool:
        return not self.reduce(vector).any()


def kernel_intersection(a: np.ndarray, b: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of ker(a) intersected with ker(b), via ker(b) restricted to ker(a)."""
    ka = kernel_array(a, p)
    if not ka:
        return []
    basis = np.array(ka, dtype=np.int64).T
    restricted = mod_matmul(b, basis, p)
    inner = kernel_array(restricted, p)
    return [mod_matmul(basis, w.reshape(-1, 1), p).ravel() for w in inner]


class ColumnSpace:
    """Echelonized column space of a matrix, for fast membership queries."""

    def __init__(self, matrix: np.ndarray, p: int) -> None:
        self.p = p
        reduced, pivots = rref_array(np.asarray(matrix, dtype=np.int64).T, p)
        self.rows = reduced[: len(pivots)]
        self.pivots = pivots

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, vector: np.ndarray) -> np.ndarray:
        v = np.mod(np.asarray(vector, dtype=np.int64), self.p)
        for row, pc in zip(self.rows, self.pivots):
            c = int(v[pc])
            if c:
                v = (v - c * row) % self.p
        return v

    def contains(self, vector: np.ndarray) -> bool:
        return not self.reduce(vector).any()
