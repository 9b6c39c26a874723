"""The order-p cyclic action on F_p[x_1, y_1, ..., x_m, y_m].

The generator fixes every x_i and sends y_i to y_i + x_i.  Everything here
works one multidegree component at a time: the component is materialized as
a matrix space in the grevlex-ordered monomial basis, the nilpotent operator
(sigma - 1) drives invariant bases, lengths and the rank-profile module
decomposition, and the periodicity reduction handles entries >= p.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from math import comb

import numpy as np

from .errors import NotInvariant, RelationFailed, ZeroPolynomial
from .ffield import (
    ColumnSpace,
    check_prime,
    kernel_array,
    mod_matmul,
    rank_array,
    rref_array,
)
from .polyring import (
    Monomial,
    MultiDegree,
    Polynomial,
    apply_block_linear,
    component_basis,
)


def apply_sigma(f: Polynomial, k: int = 1) -> Polynomial:
    """Apply the k-th power of the generator: y_i -> y_i + k*x_i."""
    k %= f.p
    if k == 0:
        return f
    mats = {i: (1, 0, k, 1) for i in range(1, f.m + 1)}
    return apply_block_linear(f, mats)


def is_invariant(f: Polynomial) -> bool:
    return apply_sigma(f, 1) == f


def transfer(f: Polynomial) -> Polynomial:
    """Sum of f over the whole group; lands in the invariant ring."""
    total = Polynomial.zero(f.m, f.p)
    for k in range(f.p):
        total = total + apply_sigma(f, k)
    return total


def norm(m: int, p: int, i: int) -> Polynomial:
    """N(y_i), the product of y_i over the group orbit: y_i^p - x_i^(p-1) y_i."""
    check_prime(p)
    out = Polynomial.constant(m, p, 1)
    for k in range(p):
        out = out * (Polynomial.y(m, p, i) + k * Polynomial.x(m, p, i))
    return out


def power_sum(t: int, p: int) -> int:
    """Sum of i^t over i in F_p: -1 when (p-1) | t, else 0 (t >= 1)."""
    check_prime(p)
    if t < 1:
        raise ValueError(f"t must be a positive integer, got {t}")
    return (p - 1) if t % (p - 1) == 0 else 0


def symmetric_power_matrix(action: tuple[int, int, int, int], n: int, p: int) -> np.ndarray:
    """Matrix of x -> a*x + b*y, y -> c*x + d*y on the basis x^j y^(n-j).

    Basis vectors are indexed by the x-exponent j = 0..n ascending, matching
    the enumeration used by component_basis on a fixed multidegree.
    """
    a, b, c, d = (v % p for v in action)
    mat = np.zeros((n + 1, n + 1), dtype=np.int64)
    for j in range(n + 1):
        # (a x + b y)^j (c x + d y)^(n-j), collected by the image x-exponent
        col = np.zeros(n + 1, dtype=np.int64)
        for r in range(j + 1):
            c1 = comb(j, r) * pow(a, r, p) * pow(b, j - r, p) % p
            if not c1:
                continue
            for s in range(n - j + 1):
                c2 = comb(n - j, s) * pow(c, s, p) * pow(d, n - j - s, p) % p
                if c2:
                    col[r + s] = (col[r + s] + c1 * c2) % p
        mat[:, j] = col
    return mat


def component_operator(m: int, p: int, lam: MultiDegree, action: tuple[int, int, int, int]) -> np.ndarray:
    """Matrix of a blockwise 2x2 substitution on the multidegree component.

    The component basis is a product basis with the last block varying
    slowest, so the operator is the Kronecker product of the per-block
    symmetric powers taken in descending block order.
    """
    factors = [symmetric_power_matrix(action, lam[i], p) for i in reversed(range(m))]
    return reduce(lambda acc, f: np.kron(acc, f) % p, factors)


class Component:
    """A multidegree component with cached operator data for (sigma - 1)."""

    def __init__(self, m: int, p: int, lam: MultiDegree) -> None:
        check_prime(p)
        self.m = m
        self.p = p
        self.lam = tuple(lam)
        self.basis: list[Monomial] = component_basis(m, self.lam)
        self.index = {mono: i for i, mono in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._powers: list[np.ndarray] | None = None
        self._colspaces: dict[int, ColumnSpace] = {}
        self._invariants: list[Polynomial] | None = None

    def to_vector(self, f: Polynomial) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for mono, c in f.terms.items():
            try:
                v[self.index[mono]] = c
            except KeyError:
                raise ValueError(
                    f"monomial {mono} is not in the component of multidegree {self.lam}"
                ) from None
        return v

    def from_vector(self, v: np.ndarray) -> Polynomial:
        return Polynomial(
            self.m, self.p, {self.basis[i]: int(c) for i, c in enumerate(v) if c % self.p}
        )

    def sigma_matrix(self) -> np.ndarray:
        return component_operator(self.m, self.p, self.lam, (1, 0, 1, 1))

    def nilpotent_power(self, r: int) -> np.ndarray:
        """(sigma - 1)^r as a matrix; powers beyond p are identically zero."""
        if self._powers is None:
            a = (self.sigma_matrix() - np.eye(self.dim, dtype=np.int64)) % self.p
            self._powers = [np.eye(self.dim, dtype=np.int64), a]
        while len(self._powers) <= r:
            nxt = mod_matmul(self._powers[-1], self._powers[1], self.p)
            self._powers.append(nxt)
        return self._powers[r]

    def image_space(self, r: int) -> ColumnSpace:
        if r not in self._colspaces:
            self._colspaces[r] = ColumnSpace(self.nilpotent_power(r), self.p)
        return self._colspaces[r]

    def invariants(self) -> list[Polynomial]:
        """Echelonized basis of the fixed subspace, monic with distinct leads."""
        if self._invariants is None:
            kernel = kernel_array(self.nilpotent_power(1), self.p)
            if kernel:
                reduced, pivots = rref_array(np.array(kernel, dtype=np.int64), self.p)
                self._invariants = [self.from_vector(reduced[i]) for i in range(len(pivots))]
            else:
                self._invariants = []
        return self._invariants


@lru_cache(maxsize=512)
def component(m: int, p: int, lam: MultiDegree) -> Component:
    return Component(m, p, lam)


def invariant_basis(m: int, p: int, lam: MultiDegree) -> list[Polynomial]:
    return component(m, p, tuple(lam)).invariants()


def transfer_image_leads(m: int, p: int, lam: MultiDegree) -> set[Monomial]:
    """Lead monomials occurring among elements of the transfer image.

    The transfer equals (sigma - 1)^(p-1), and the lead monomials of a
    subspace are the pivot monomials of its echelonized basis.
    """
    comp = component(m, p, tuple(lam))
    space = comp.image_space(p - 1)
    return {comp.basis[c] for c in space.pivots}


def length(f: Polynomial, lam: MultiDegree | None = None) -> int:
    """1 + the largest r with f in the image of (sigma - 1)^r on its component."""
    if not f:
        raise ZeroPolynomial("length is defined for nonzero invariants only")
    if lam is None:
        lam = f.multidegree()
    comp = component(f.m, f.p, tuple(lam))
    v = comp.to_vector(f)
    if (comp.nilpotent_power(1) @ v % f.p).any():
        raise NotInvariant("length is defined for fixed points only")
    for r in range(f.p - 1, 0, -1):
        if comp.image_space(r).contains(v):
            return r + 1
    return 1


@dataclass(frozen=True)
class ModuleDecomposition:
    """Multiplicities (m_1, ..., m_p) of the indecomposables V_1 ... V_p."""

    p: int
    multiplicities: tuple[int, ...]

    def dimension(self) -> int:
        return sum(i * mult for i, mult in enumerate(self.multiplicities, start=1))

    def summand_count(self) -> int:
        return sum(self.multiplicities)

    def as_dict(self) -> dict[int, int]:
        return {i: mult for i, mult in enumerate(self.multiplicities, start=1) if mult}

    def label(self) -> str:
        parts = []
        for i, mult in sorted(self.as_dict().items()):
            parts.append(f"{mult}V{i}" if mult > 1 else f"V{i}")
        return " + ".join(parts) if parts else "0"

    def __add__(self, other: "ModuleDecomposition") -> "ModuleDecomposition":
        if self.p != other.p:
            raise ValueError("mixed primes")
        return ModuleDecomposition(
            self.p,
            tuple(a + b for a, b in zip(self.multiplicities, other.multiplicities)),
        )


def decompose_component(m: int, p: int, lam: MultiDegree) -> ModuleDecomposition:
    """Indecomposable multiplicities from the rank profile of (sigma - 1).

    With d_j the rank of (sigma - 1)^j (and d_p = d_(p+1) = 0), the unique
    solution of the triangular multiplicity system is
    m_i = d_(i-1) - 2 d_i + d_(i+1).
    """
    comp = component(m, p, tuple(lam))
    d = [comp.dim]
    for j in range(1, p):
        d.append(rank_array(comp.nilpotent_power(j), p))
    d.extend([0, 0])
    if comp.nilpotent_power(p).any():
        raise RelationFailed("(sigma - 1)^p did not vanish; arithmetic bug")
    mult = tuple(d[i - 1] - 2 * d[i] + d[i + 1] for i in range(1, p + 1))
    if any(v < 0 for v in mult):
        raise RelationFailed(f"negative multiplicity from rank profile {d}")
    return ModuleDecomposition(p, mult)


@dataclass(frozen=True)
class PeriodicityResult:
    """Reduction (d_1, ..., d_m) -> (d_i mod p) plus t extra projectives."""

    reduced: MultiDegree
    projective_count: int


def periodicity_reduce(m: int, p: int, lam: MultiDegree) -> PeriodicityResult:
    """Split off free summands: the component equals the reduced one plus t V_p."""
    check_prime(p)
    lam = tuple(lam)
    if len(lam) != m:
        raise ValueError(f"multidegree has {len(lam)} entries for m={m}")
    reduced = tuple(d % p for d in lam)
    dim_full = 1
    dim_red = 1
    for d, r in zip(lam, reduced):
        dim_full *= d + 1
        dim_red *= r + 1
    quotient, remainder = divmod(dim_full - dim_red, p)
    if remainder:
        raise RelationFailed("periodicity dimension count is not divisible by p")
    return PeriodicityResult(reduced, quotient)


def projective_decomposition(p: int, t: int) -> ModuleDecomposition:
    return ModuleDecomposition(p, tuple(0 for _ in range(p - 1)) + (t,))
