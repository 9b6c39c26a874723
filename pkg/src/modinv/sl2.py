"""Invariants of SL_2(F_p) acting diagonally on m copies of the plane.

The unipotent generator reproduces the cyclic action, so the group is
generated by the two elementary transvections and invariance reduces to two
kernel conditions per multidegree component.  The classical one-block
invariants polarize to the set S_m; minimal algebra generators are counted
degree by degree as the codimension of products of lower-degree invariants
inside the invariant space of that degree.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

import numpy as np

from .cpaction import component, component_operator, norm
from .errors import DegreeMismatch, InfeasibleSize
from .ffield import RowSpan, check_prime, kernel_intersection, rref_array
from .polarize import nabla_project
from .polyring import (
    Monomial,
    MultiDegree,
    Polynomial,
    iter_multidegrees,
)
from .sagbi import Generator, GeneratorSet

BUDGET_ENV = "MODINV_BUDGET_SECS"


@dataclass(frozen=True)
class SL2Element:
    """A determinant-one 2x2 matrix over F_p."""

    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self) -> None:
        check_prime(self.p)
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % self.p)
        det = (self.a * self.d - self.b * self.c) % self.p
        if det != 1:
            raise ValueError(f"determinant {det} != 1 mod {self.p}")

    @classmethod
    def identity(cls, p: int) -> "SL2Element":
        return cls(1, 0, 0, 1, p)

    @classmethod
    def upper(cls, p: int) -> "SL2Element":
        """[[1, 1], [0, 1]]; acts on polynomials exactly as the cyclic generator."""
        return cls(1, 1, 0, 1, p)

    @classmethod
    def lower(cls, p: int) -> "SL2Element":
        """[[1, 0], [1, 1]]; together with upper() generates the group."""
        return cls(1, 0, 1, 1, p)

    @classmethod
    def diagonal(cls, p: int, unit: int) -> "SL2Element":
        return cls(unit, 0, 0, pow(unit, p - 2, p), p)

    def __mul__(self, other: "SL2Element") -> "SL2Element":
        if other.p != self.p:
            raise ValueError("mixed primes")
        return SL2Element(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.p,
        )

    def inverse(self) -> "SL2Element":
        return SL2Element(self.d, -self.b, -self.c, self.a, self.p)

    def action_coefficients(self) -> tuple[int, int, int, int]:
        """Substitution table (x -> a x + c y, y -> b x + d y).

        The transpose rule makes g -> action(g) an anti-homomorphism, which
        is exactly what composing substitutions needs, and it is pinned by
        requiring the upper transvection to act as the cyclic generator.
        """
        return (self.a, self.c, self.b, self.d)


def all_elements(p: int) -> list[SL2Element]:
    out = []
    for a, b, c in itertools.product(range(p), repeat=3):
        # solve a*d - b*c = 1 for d when possible
        if a:
            d = (1 + b * c) * pow(a, p - 2, p) % p
            out.append(SL2Element(a, b, c, d, p))
        elif b * c % p == p - 1:
            for d in range(p):
                out.append(SL2Element(a, b, c, d, p))
    return out


def sl2_act(g: SL2Element, f: Polynomial) -> Polynomial:
    """Diagonal action across blocks by the fixed substitution convention."""
    from .polyring import apply_block_linear

    a, b, c, d = g.action_coefficients()
    mats = {i: (a, b, c, d) for i in range(1, f.m + 1)}
    return apply_block_linear(f, mats)


@dataclass(frozen=True)
class DicksonPair:
    """The classical one-block generators: L = x N(y), D = N(y)^(p-1) + x^(p(p-1))."""

    L: Polynomial
    D: Polynomial


def dickson(p: int) -> DicksonPair:
    n = norm(1, p, 1)
    L = Polynomial.x(1, p, 1) * n
    D = n ** (p - 1) + Polynomial.x(1, p, 1) ** (p * (p - 1))
    return DicksonPair(L, D)


def polarize_LD(p: int, m: int, lam: MultiDegree, which: str = "L") -> Polynomial:
    """Multidegree-lambda polarisation of L (degree p+1) or D (degree p(p-1))."""
    pair = dickson(p)
    if which == "L":
        source, degree = pair.L, p + 1
    elif which == "D":
        source, degree = pair.D, p * (p - 1)
    else:
        raise ValueError(f"which must be 'L' or 'D', got {which!r}")
    if sum(lam) != degree:
        raise DegreeMismatch(f"{which} has degree {degree}, but |lambda| = {sum(lam)}")
    return nabla_project(source, m, lam)


def L_single(p: int, m: int, i: int) -> Polynomial:
    lam = tuple(p + 1 if k == i else 0 for k in range(1, m + 1))
    return polarize_LD(p, m, lam, "L")


def L_pair(p: int, m: int, i: int, j: int) -> Polynomial:
    """Polarisation with 1 in slot i and p in slot j (i != j): x_i y_j^p - y_i x_j^p."""
    if i == j:
        raise ValueError("L_pair needs two distinct blocks")
    lam = tuple(1 if k == i else p if k == j else 0 for k in range(1, m + 1))
    return polarize_LD(p, m, lam, "L")


def dickson_multidegrees(p: int, m: int) -> list[MultiDegree]:
    """Multidegrees with every entry divisible by p summing to p(p-1)."""
    out = []
    for lam in iter_multidegrees(m, p * (p - 1)):
        if all(v % p == 0 for v in lam):
            out.append(lam)
    return sorted(out)


def build_Sm(p: int, m: int) -> GeneratorSet:
    """The polarized generating family: u's, L's, and the D polarisations."""
    gens: list[Generator] = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            poly = Polynomial.u(m, p, i, j)
            gens.append(Generator("u", (i, j), poly.lead_monomial(), m, p, poly))
    for i in range(1, m + 1):
        poly = L_single(p, m, i)
        gens.append(Generator("L", (i,), poly.lead_monomial(), m, p, poly))
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if i == j:
                continue
            poly = L_pair(p, m, i, j)
            gens.append(Generator("Lij", (i, j), poly.lead_monomial(), m, p, poly))
    for lam in dickson_multidegrees(p, m):
        poly = polarize_LD(p, m, lam, "D")
        if poly:
            gens.append(Generator("D", lam, poly.lead_monomial(), m, p, poly))
    return GeneratorSet(m, p, "sl2", gens)


def weight_of_monomial(mono: Monomial, p: int) -> int:
    """x's weigh +1 and y's weigh -1, read modulo p - 1."""
    m = len(mono) // 2
    w = sum(mono[2 * i + 1] - mono[2 * i] for i in range(m))
    return w % (p - 1) if p > 2 else 0


def rel_transfer_PB(m: int, p: int, alpha: MultiDegree, beta: MultiDegree) -> Polynomial:
    """Relative transfer of N(y)^alpha x^beta from the unipotent to the Borel group.

    Determined by weight: the monomial survives with a sign flip exactly
    when |beta| - |alpha| vanishes mod p - 1.  The p = 2 Borel group equals
    the unipotent group, so the rule degenerates; use the coset sum there.
    """
    if p <= 2:
        raise ValueError("the weight rule needs p > 2; for p = 2 the groups coincide")
    f = norm_power_monomial(m, p, alpha, beta)
    if (sum(beta) - sum(alpha)) % (p - 1) == 0:
        return -f
    return Polynomial.zero(m, p)


def borel_coset_transfer(m: int, p: int, alpha: MultiDegree, beta: MultiDegree) -> Polynomial:
    """Direct sum over the p-1 diagonal coset representatives."""
    f = norm_power_monomial(m, p, alpha, beta)
    total = Polynomial.zero(m, p)
    for unit in range(1, p):
        total = total + sl2_act(SL2Element.diagonal(p, unit), f)
    return total


def norm_power_monomial(m: int, p: int, alpha: MultiDegree, beta: MultiDegree) -> Polynomial:
    out = Polynomial.constant(m, p, 1)
    for i in range(1, m + 1):
        a = alpha[i - 1]
        b = beta[i - 1]
        if a:
            out = out * norm(m, p, i) ** a
        if b:
            out = out * Polynomial.x(m, p, i) ** b
    return out


# ---------- invariant spaces ----------


@lru_cache(maxsize=4096)
def _sl2_kernel_sorted(m: int, p: int, lam: MultiDegree) -> tuple[Polynomial, ...]:
    """Echelonized SL_2-invariant basis for a sorted multidegree."""
    comp = component(m, p, lam)
    upper = component_operator(m, p, lam, SL2Element.upper(p).action_coefficients())
    lower = component_operator(m, p, lam, SL2Element.lower(p).action_coefficients())
    eye = np.eye(comp.dim, dtype=np.int64)
    vectors = kernel_intersection((upper - eye) % p, (lower - eye) % p, p)
    if not vectors:
        return ()
    reduced, pivots = rref_array(np.array(vectors, dtype=np.int64), p)
    return tuple(comp.from_vector(reduced[i]) for i in range(len(pivots)))


def permute_blocks(f: Polynomial, perm: tuple[int, ...]) -> Polynomial:
    """Relabel blocks: block i moves to position perm[i-1] (1-based)."""
    out: dict[Monomial, int] = {}
    for mono, coeff in f.terms.items():
        target = [0] * (2 * f.m)
        for i in range(f.m):
            t = perm[i] - 1
            target[2 * t] = mono[2 * i]
            target[2 * t + 1] = mono[2 * i + 1]
        out[tuple(target)] = coeff
    return Polynomial(f.m, f.p, out)


def _carrying_permutation(source: MultiDegree, target: MultiDegree) -> tuple[int, ...]:
    """A block permutation sending a polynomial of multidegree source to target."""
    used = [False] * len(target)
    perm = [0] * len(source)
    for i, v in enumerate(source):
        for j, w in enumerate(target):
            if not used[j] and w == v:
                used[j] = True
                perm[i] = j + 1
                break
    return tuple(perm)


def _sorting_permutation(lam: MultiDegree) -> tuple[MultiDegree, tuple[int, ...]]:
    """Sorted multidegree plus a block permutation carrying sorted onto lam."""
    order = sorted(range(len(lam)), key=lambda i: (-lam[i], i))
    sorted_lam = tuple(lam[i] for i in order)
    perm = [0] * len(lam)
    for position, source in enumerate(order):
        perm[position] = source + 1
    return sorted_lam, tuple(perm)


def sl2_invariant_basis(m: int, p: int, lam: MultiDegree) -> list[Polynomial]:
    """Fixed vectors of the two transvections on the multidegree component.

    Computed once per sorted multidegree and transported by block
    permutation, which commutes with the diagonal action.
    """
    lam = tuple(lam)
    sorted_lam, perm = _sorting_permutation(lam)
    basis = _sl2_kernel_sorted(m, p, sorted_lam)
    if sorted_lam == lam:
        return list(basis)
    return [permute_blocks(f, perm) for f in basis]


# ---------- minimal generators ----------


@dataclass
class SL2GeneratorReport:
    p: int
    m: int
    dmax: int
    per_degree: dict[int, int]
    noether_number: int
    s_m_size: int
    generators: list[tuple[MultiDegree, Polynomial]] = field(repr=False, default_factory=list)

    @property
    def total_generators(self) -> int:
        return sum(self.per_degree.values())

    def bound(self) -> int:
        return (self.p + self.m - 2) * (self.p - 1)


class _Budget:
    def __init__(self, seconds: float | None) -> None:
        if seconds is None:
            env = os.environ.get(BUDGET_ENV)
            seconds = float(env) if env else None
        self.seconds = seconds
        self.start = time.monotonic()

    def check(self, context: str) -> None:
        if self.seconds is not None and time.monotonic() - self.start > self.seconds:
            raise InfeasibleSize(f"budget of {self.seconds}s exceeded during {context}")


def _estimate_ops(m: int, p: int, dmax: int) -> float:
    total = 0.0
    for d in range(1, dmax + 1):
        for lam in iter_multidegrees(m, d):
            if tuple(sorted(lam, reverse=True)) != lam:
                continue
            dim = 1.0
            for v in lam:
                dim *= v + 1
            total += dim**3
    return total


def minimal_generators_sl2(
    p: int, m: int, dmax: int, budget_secs: float | None = None
) -> SL2GeneratorReport:
    """Count minimal algebra generators of the invariant ring per degree.

    Works one multidegree at a time: products of already-found generators
    with lower-degree invariants span the decomposable part, and any
    invariant independent of that span starts a new generator.  Only sorted
    multidegrees are computed; the block symmetry transports both counts
    and generators to the other orbits.
    """
    check_prime(p)
    if dmax < 2:
        raise ValueError("dmax must be at least 2")
    budget = _Budget(budget_secs)
    if budget.seconds is not None:
        estimated = _estimate_ops(m, p, dmax) / 2.0e8
        if estimated > budget.seconds:
            raise InfeasibleSize(
                f"estimated {estimated:.0f}s of elimination exceeds the budget "
                f"of {budget.seconds}s"
            )

    generators: list[tuple[MultiDegree, Polynomial]] = []
    per_degree: dict[int, int] = {}
    for d in range(1, dmax + 1):
        new_in_degree = 0
        for lam in iter_multidegrees(m, d):
            if tuple(sorted(lam, reverse=True)) != lam:
                continue
            budget.check(f"degree {d}, multidegree {lam}")
            invariants = sl2_invariant_basis(m, p, lam)
            orbit = len(set(itertools.permutations(lam)))
            if not invariants:
                continue
            comp = component(m, p, lam)
            span = RowSpan(p, comp.dim)
            for mu, g in generators:
                if any(a > b for a, b in zip(mu, lam)) or mu == lam:
                    continue
                rest = tuple(b - a for a, b in zip(mu, lam))
                for h in sl2_invariant_basis(m, p, rest):
                    span.add(comp.to_vector(g * h))
            fresh: list[Polynomial] = []
            for f in invariants:
                if span.add(comp.to_vector(f)):
                    fresh.append(f)
            if not fresh:
                continue
            new_in_degree += orbit * len(fresh)
            for target in sorted(set(itertools.permutations(lam)), reverse=True):
                perm = _carrying_permutation(lam, target)
                for f in fresh:
                    generators.append((target, permute_blocks(f, perm)))
        if new_in_degree:
            per_degree[d] = new_in_degree
    noether = max(per_degree) if per_degree else 0
    return SL2GeneratorReport(
        p,
        m,
        dmax,
        per_degree,
        noether,
        len(build_Sm(p, m)),
        generators,
    )


def verify_sm_membership(p: int, m: int, dmax: int, budget_secs: float | None = None) -> dict:
    """Check the generation theorem on a small instance.

    Every minimal generator up to dmax must lie in the algebra spanned by
    the polarized family together with full-group transfers of monomials.
    """
    budget = _Budget(budget_secs)
    report = minimal_generators_sl2(p, m, dmax, budget_secs)
    atoms: list[tuple[MultiDegree, Polynomial]] = []
    for g in build_Sm(p, m).elements:
        poly = g.poly()
        if poly and sum(poly.multidegree()) <= dmax:
            atoms.append((poly.multidegree(), poly))
    group = all_elements(p)
    for total in range(1, dmax + 1):
        for lam in iter_multidegrees(m, total):
            for mono in component(m, p, lam).basis:
                budget.check("transfer tabulation")
                f = Polynomial.monomial(m, p, mono)
                image = Polynomial.zero(m, p)
                for g in group:
                    image = image + sl2_act(g, f)
                if image:
                    atoms.append((lam, image))

    spans: dict[MultiDegree, RowSpan] = {}
    bases: dict[MultiDegree, list[Polynomial]] = {(0,) * m: [Polynomial.constant(m, p, 1)]}
    for total in range(1, dmax + 1):
        for lam in iter_multidegrees(m, total):
            budget.check(f"algebra span at {lam}")
            comp = component(m, p, lam)
            span = RowSpan(p, comp.dim)
            basis: list[Polynomial] = []
            for mu, atom in atoms:
                if any(a > b for a, b in zip(mu, lam)):
                    continue
                rest = tuple(b - a for a, b in zip(mu, lam))
                for h in bases.get(rest, []):
                    prod = atom * h
                    if prod and span.add(comp.to_vector(prod)):
                        basis.append(prod)
            spans[lam] = span
            bases[lam] = basis

    missing = []
    for lam, g in report.generators:
        if not spans[tuple(lam)].contains(component(m, p, tuple(lam)).to_vector(g)):
            missing.append(list(lam))
    return {
        "p": p,
        "m": m,
        "dmax": dmax,
        "generators_checked": len(report.generators),
        "missing": missing,
        "noether_number": report.noether_number,
        "ok": not missing,
    }


# ---------- identity checks ----------


def l_identities_hold(p: int, m: int) -> bool:
    """L_ij = x_i N(y_j) + u_ij x_j^(p-1) and L_ji = x_j N(y_i) - u_ij x_i^(p-1)."""
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            u = Polynomial.u(m, p, i, j)
            xi = Polynomial.x(m, p, i)
            xj = Polynomial.x(m, p, j)
            lhs = L_pair(p, m, i, j)
            rhs = xi * norm(m, p, j) + u * xj ** (p - 1)
            if lhs != rhs:
                return False
            lhs = L_pair(p, m, j, i)
            rhs = xj * norm(m, p, i) - u * xi ** (p - 1)
            if lhs != rhs:
                return False
    return True


def rank_one_substitution_vanishes(f: Polynomial) -> bool:
    """Whether f vanishes identically under x_i -> a_i X, y_i -> a_i Y.

    The substitution parameterizes the rank-one locus, whose prime ideal is
    generated by the u_ij; identical vanishing is membership in that ideal.
    """
    acc: dict[tuple, int] = {}
    for mono, coeff in f.terms.items():
        a_exps = []
        cx = 0
        cy = 0
        for i in range(f.m):
            ey = mono[2 * i]
            ex = mono[2 * i + 1]
            a_exps.append(ex + ey)
            cx += ex
            cy += ey
        key = (tuple(a_exps), cx, cy)
        s = (acc.get(key, 0) + coeff) % f.p
        if s:
            acc[key] = s
        else:
            acc.pop(key, None)
    return not acc


def d_lemma_holds(p: int, m: int) -> bool:
    """nabla_m(D) matches (sum N(y_i))^(p-1) + (sum x_i)^(p(p-1)) mod (u_ij)."""
    xs = Polynomial.zero(m, p)
    norms = Polynomial.zero(m, p)
    for i in range(1, m + 1):
        xs = xs + Polynomial.x(m, p, i)
        norms = norms + norm(m, p, i)
    pair = dickson(p)
    full = _substitute_sums(pair.D, m)
    target = norms ** (p - 1) + xs ** (p * (p - 1))
    if not rank_one_substitution_vanishes(full - target):
        return False
    # and the projected version: D_lambda = binom(p-1, lambda/p)(N(y)^(lambda/p) + x^lambda)
    for lam in dickson_multidegrees(p, m):
        coeff = factorial(p - 1)
        for v in lam:
            coeff //= factorial(v // p)
        dl = polarize_LD(p, m, lam, "D")
        model = Polynomial.constant(m, p, 1)
        xmodel = Polynomial.constant(m, p, 1)
        for i, v in enumerate(lam, start=1):
            if v:
                model = model * norm(m, p, i) ** (v // p)
                xmodel = xmodel * Polynomial.x(m, p, i) ** v
        if not rank_one_substitution_vanishes(dl - (model + xmodel).scale(coeff)):
            return False
    return True


def _substitute_sums(f: Polynomial, m: int) -> Polynomial:
    """Send the one-block variables to the sums of all block variables."""
    xs = Polynomial.zero(m, f.p)
    ys = Polynomial.zero(m, f.p)
    for i in range(1, m + 1):
        xs = xs + Polynomial.x(m, f.p, i)
        ys = ys + Polynomial.y(m, f.p, i)
    out = Polynomial.zero(m, f.p)
    for mono, coeff in f.terms.items():
        ey, ex = mono
        out = out + (xs**ex * ys**ey).scale(coeff)
    return out
