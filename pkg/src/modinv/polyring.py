"""Sparse multivariate polynomials over F_p in blocks of plane variables.

The ring is F_p[x_1, y_1, ..., x_m, y_m] with one (x_i, y_i) pair per block.
The monomial order is graded reverse lexicographic for the variable order
y_1 > x_1 > y_2 > x_2 > ... > y_m > x_m.  Exponent vectors are plain tuples
of length 2m listed in that descending variable order, so position 2(i-1)
holds the y_i exponent and position 2i-1 the x_i exponent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Mapping

from .errors import (
    DimensionMismatch,
    NotMultihomogeneous,
    ZeroPolynomial,
)
from .ffield import check_prime, inverse_mod

Monomial = tuple[int, ...]
MultiDegree = tuple[int, ...]

X = "x"
Y = "y"


@dataclass(frozen=True)
class VarRef:
    """A variable named by its block (1-based) and kind ('x' or 'y')."""

    block: int
    kind: str

    def index(self) -> int:
        return var_index(self.block, self.kind)


def var_index(block: int, kind: str) -> int:
    """Position of a variable in the exponent tuple (y_i before x_i)."""
    if block < 1:
        raise ValueError(f"block indices are 1-based, got {block}")
    if kind == Y:
        return 2 * (block - 1)
    if kind == X:
        return 2 * block - 1
    raise ValueError(f"unknown variable kind {kind!r}")


def var_name(index: int) -> str:
    block, r = divmod(index, 2)
    return f"{Y if r == 0 else X}{block + 1}"


def monomial_degree(mono: Monomial) -> int:
    return sum(mono)


def monomial_multidegree(mono: Monomial) -> MultiDegree:
    return tuple(mono[i] + mono[i + 1] for i in range(0, len(mono), 2))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(u + v for u, v in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True when a | b entrywise."""
    return all(u <= v for u, v in zip(a, b))


def grevlex_key(mono: Monomial):
    """Sort key realizing the graded reverse lexicographic order."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


def grevlex_cmp(a: Monomial, b: Monomial) -> int:
    """-1, 0 or 1 as a <, =, > b in grevlex."""
    if len(a) != len(b):
        raise DimensionMismatch(f"monomials in {len(a)} and {len(b)} variables")
    ka, kb = grevlex_key(a), grevlex_key(b)
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


def monomial_str(mono: Monomial) -> str:
    """Render with variables in alphabetical order: x1, x2, ..., y1, y2, ..."""
    m = len(mono) // 2
    parts = []
    for idx in [2 * b + 1 for b in range(m)] + [2 * b for b in range(m)]:
        e = mono[idx]
        if e == 1:
            parts.append(var_name(idx))
        elif e > 1:
            parts.append(f"{var_name(idx)}^{e}")
    return "*".join(parts) if parts else "1"


def component_basis(m: int, lam: MultiDegree) -> list[Monomial]:
    """All monomials of multidegree lam, grevlex-descending.

    On a fixed multidegree the order coincides with ascending lexicographic
    order of the reversed x-exponent vector (a_m, ..., a_1); the basis is
    enumerated directly in that order.
    """
    if len(lam) != m:
        raise DimensionMismatch(f"multidegree has {len(lam)} entries for m={m}")
    basis = []
    for rev_a in itertools.product(*[range(lam[i] + 1) for i in reversed(range(m))]):
        mono = [0] * (2 * m)
        for i in range(m):
            a = rev_a[m - 1 - i]
            mono[2 * i] = lam[i] - a
            mono[2 * i + 1] = a
        basis.append(tuple(mono))
    return basis


class Polynomial:
    """Sparse polynomial over F_p; terms map exponent tuples to nonzero ints."""

    __slots__ = ("m", "p", "terms")

    def __init__(self, m: int, p: int, terms: Mapping[Monomial, int] | None = None) -> None:
        check_prime(p)
        self.m = m
        self.p = p
        clean: dict[Monomial, int] = {}
        if terms:
            for mono, coeff in terms.items():
                c = coeff % p
                if c:
                    if len(mono) != 2 * m:
                        raise DimensionMismatch(
                            f"exponent tuple of length {len(mono)} in a {m}-block ring"
                        )
                    clean[mono] = c
        self.terms = clean

    # ---------- constructors ----------

    @classmethod
    def zero(cls, m: int, p: int) -> "Polynomial":
        return cls(m, p)

    @classmethod
    def constant(cls, m: int, p: int, c: int) -> "Polynomial":
        return cls(m, p, {(0,) * (2 * m): c})

    @classmethod
    def variable(cls, m: int, p: int, block: int, kind: str) -> "Polynomial":
        mono = [0] * (2 * m)
        mono[var_index(block, kind)] = 1
        return cls(m, p, {tuple(mono): 1})

    @classmethod
    def x(cls, m: int, p: int, block: int) -> "Polynomial":
        return cls.variable(m, p, block, X)

    @classmethod
    def y(cls, m: int, p: int, block: int) -> "Polynomial":
        return cls.variable(m, p, block, Y)

    @classmethod
    def u(cls, m: int, p: int, i: int, j: int) -> "Polynomial":
        """The determinant invariant u_ij = x_i y_j - x_j y_i, i < j."""
        if not 1 <= i < j <= m:
            raise ValueError(f"u_ij needs 1 <= i < j <= m, got ({i}, {j})")
        a = [0] * (2 * m)
        a[var_index(i, X)] = 1
        a[var_index(j, Y)] = 1
        b = [0] * (2 * m)
        b[var_index(j, X)] = 1
        b[var_index(i, Y)] = 1
        return cls(m, p, {tuple(a): 1, tuple(b): -1})

    @classmethod
    def monomial(cls, m: int, p: int, mono: Monomial, coeff: int = 1) -> "Polynomial":
        return cls(m, p, {tuple(mono): coeff})

    # ---------- ring structure ----------

    def _check(self, other: "Polynomial") -> None:
        if self.m != other.m or self.p != other.p:
            raise DimensionMismatch(
                f"mixed rings: (m={self.m}, p={self.p}) vs (m={other.m}, p={other.p})"
            )

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.m == other.m and self.p == other.p and self.terms == other.terms

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = (out.get(mono, 0) + c) % self.p
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Polynomial(self.m, self.p, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = (out.get(mono, 0) - c) % self.p
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Polynomial(self.m, self.p, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.m, self.p, {mono: -c for mono, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = self.p
        out: dict[Monomial, int] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = monomial_mul(ma, mb)
                s = (out.get(mono, 0) + ca * cb) % p
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        return Polynomial(self.m, p, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = Polynomial.constant(self.m, self.p, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c: int) -> "Polynomial":
        c %= self.p
        if c == 0:
            return Polynomial.zero(self.m, self.p)
        return Polynomial(self.m, self.p, {mono: v * c for mono, v in self.terms.items()})

    def monic(self) -> "Polynomial":
        _, c = self.lead()
        return self.scale(inverse_mod(c, self.p))

    # ---------- structure queries ----------

    def lead(self) -> tuple[Monomial, int]:
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no lead term")
        mono = max(self.terms, key=grevlex_key)
        return mono, self.terms[mono]

    def lead_monomial(self) -> Monomial:
        return self.lead()[0]

    def total_degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no degree")
        return max(sum(mono) for mono in self.terms)

    def is_multihomogeneous(self) -> bool:
        degrees = {monomial_multidegree(mono) for mono in self.terms}
        return len(degrees) <= 1

    def multidegree(self) -> MultiDegree:
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no multidegree")
        degrees = {monomial_multidegree(mono) for mono in self.terms}
        if len(degrees) > 1:
            raise NotMultihomogeneous(f"mixed multidegrees {sorted(degrees)}")
        return next(iter(degrees))

    def multidegree_component(self, lam: MultiDegree) -> "Polynomial":
        return Polynomial(
            self.m,
            self.p,
            {mono: c for mono, c in self.terms.items() if monomial_multidegree(mono) == lam},
        )

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return [(mono, self.terms[mono]) for mono in sorted(self.terms, key=grevlex_key, reverse=True)]

    def evaluate(self, point: Iterable[int]) -> int:
        """Value at a point of F_p^(2m); point follows the exponent order."""
        pt = list(point)
        if len(pt) != 2 * self.m:
            raise DimensionMismatch(f"point of length {len(pt)} in a {self.m}-block ring")
        total = 0
        for mono, c in self.terms.items():
            v = c
            for coord, e in zip(pt, mono):
                if e:
                    v = v * pow(coord % self.p, e, self.p) % self.p
            total = (total + v) % self.p
        return total

    # ---------- rendering ----------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for mono, coeff in self.sorted_terms():
            c = coeff if coeff <= self.p // 2 or self.p == 2 else coeff - self.p
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = monomial_str(mono)
            if body == "1":
                chunk = str(mag)
            elif mag == 1:
                chunk = body
            else:
                chunk = f"{mag}*{body}"
            if not parts:
                parts.append(chunk if sign == "+" else f"-{chunk}")
            else:
                parts.append(f" {sign} {chunk}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial(m={self.m}, p={self.p}, {self})"


@lru_cache(maxsize=None)
def _linear_power(cx: int, cy: int, n: int, p: int) -> tuple[tuple[int, int, int], ...]:
    """Expansion of (cx*x + cy*y)^n as ((ex, ey, coeff), ...) for one block."""
    out = []
    for k in range(n + 1):
        c = comb(n, k) * pow(cx, n - k, p) * pow(cy, k, p) % p
        if c:
            out.append((n - k, k, c))
    return tuple(out)


def apply_block_linear(f: Polynomial, mats: Mapping[int, tuple[int, int, int, int]]) -> Polynomial:
    """Algebra map sending x_i -> a*x_i + b*y_i, y_i -> c*x_i + d*y_i per block.

    ``mats[i] = (a, b, c, d)`` for 1-based block i; omitted blocks are fixed.
    """
    p = f.p
    out: dict[Monomial, int] = {}
    for mono, coeff in f.terms.items():
        factors = []
        for block, (a, b, c, d) in mats.items():
            ey = mono[2 * block - 2]
            ex = mono[2 * block - 1]
            if ex == 0 and ey == 0:
                continue
            block_terms: dict[tuple[int, int], int] = {(0, 0): 1}
            if ex:
                block_terms = _convolve_block(block_terms, _linear_power(a, b, ex, p), p)
            if ey:
                block_terms = _convolve_block(block_terms, _linear_power(c, d, ey, p), p)
            factors.append((block, block_terms))
        _accumulate(out, mono, coeff, factors, f.m, p)
    return Polynomial(f.m, f.p, out)


def _convolve_block(
    acc: dict[tuple[int, int], int],
    expansion: tuple[tuple[int, int, int], ...],
    p: int,
) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for (ex0, ey0), c0 in acc.items():
        for ex1, ey1, c1 in expansion:
            key = (ex0 + ex1, ey0 + ey1)
            s = (out.get(key, 0) + c0 * c1) % p
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def _accumulate(
    out: dict[Monomial, int],
    mono: Monomial,
    coeff: int,
    factors: list[tuple[int, dict[tuple[int, int], int]]],
    m: int,
    p: int,
) -> None:
    partial: list[tuple[list[int], int]] = [(list(mono), coeff)]
    for block, block_terms in factors:
        grown: list[tuple[list[int], int]] = []
        for expo, c in partial:
            for (ex, ey), bc in block_terms.items():
                e2 = list(expo)
                e2[2 * block - 2] = ey
                e2[2 * block - 1] = ex
                grown.append((e2, c * bc % p))
        partial = grown
    for expo, c in partial:
        if not c:
            continue
        key = tuple(expo)
        s = (out.get(key, 0) + c) % p
        if s:
            out[key] = s
        else:
            out.pop(key, None)


def iter_multidegrees(m: int, total: int) -> Iterator[MultiDegree]:
    """All multidegrees with m entries summing to ``total``, first entry descending."""
    if m == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in iter_multidegrees(m - 1, total - first):
            yield (first,) + rest
