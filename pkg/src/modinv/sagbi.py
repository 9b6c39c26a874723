"""Generating sets for the invariant ring and subduction against them.

The full set consists of the x's, the norms, the determinants u_ij and all
nonzero transfers of y-monomials with exponents below p; dropping the
transfers of degree at most 2(p-1) leaves the minimal set.  Lead monomials
multiplicatively generate every invariant lead, which is what sagbi_verify
checks degree component by degree component, and subduction rewrites an
invariant as a polynomial in the generators by repeatedly cancelling its
lead against a monic product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .cpaction import is_invariant, norm, transfer
from .errors import NotInvariant
from .ffield import inverse_mod
from .polyring import (
    Monomial,
    MultiDegree,
    Polynomial,
    grevlex_key,
    monomial_divides,
    monomial_multidegree,
)

FULL = "full"
MINIMAL = "minimal"


def trace_lead(E: tuple[int, ...], p: int) -> Monomial:
    """Closed-form lead monomial of the transfer of y^E (|E| >= p-1).

    With r minimal such that t = e_1 + ... + e_r >= p-1, the first r-1
    blocks contribute their x's, block r splits as x^(p-1-(t-e_r)) y^(t-(p-1)),
    and later blocks keep their y's.
    """
    m = len(E)
    t = 0
    r = None
    for i, e in enumerate(E):
        t += e
        if t >= p - 1:
            r = i
            break
    if r is None:
        raise ValueError(f"transfer of y^{E} vanishes: |E| < p - 1")
    mono = [0] * (2 * m)
    for i in range(r):
        mono[2 * i + 1] = E[i]
    overshoot = t - (p - 1)
    mono[2 * r + 1] = E[r] - overshoot
    mono[2 * r] = overshoot
    for i in range(r + 1, m):
        mono[2 * i] = E[i]
    return tuple(mono)


@dataclass
class Generator:
    """A tagged invariant generator; the polynomial materializes on demand."""

    tag: str
    index: tuple[int, ...]
    lead: Monomial
    m: int
    p: int
    _poly: Polynomial | None = field(default=None, repr=False, compare=False)

    def poly(self) -> Polynomial:
        if self._poly is None:
            m, p = self.m, self.p
            if self.tag == "x":
                self._poly = Polynomial.x(m, p, self.index[0])
            elif self.tag == "norm":
                self._poly = norm(m, p, self.index[0])
            elif self.tag == "u":
                self._poly = Polynomial.u(m, p, *self.index)
            elif self.tag == "trace":
                f = Polynomial.constant(m, p, 1)
                for i, e in enumerate(self.index, start=1):
                    if e:
                        f = f * Polynomial.y(m, p, i) ** e
                self._poly = transfer(f)
            else:
                raise ValueError(f"unknown generator tag {self.tag!r}")
        return self._poly

    def name(self) -> str:
        if self.tag == "x":
            return f"x{self.index[0]}"
        if self.tag == "norm":
            return f"N(y{self.index[0]})"
        if self.tag == "u":
            return f"u{self.index[0]}{self.index[1]}"
        return "Tr(y^" + ",".join(map(str, self.index)) + ")"


@dataclass
class GeneratorSet:
    m: int
    p: int
    variant: str
    elements: list[Generator]

    def without(self, gen: Generator) -> "GeneratorSet":
        rest = [g for g in self.elements if not (g.tag == gen.tag and g.index == gen.index)]
        return GeneratorSet(self.m, self.p, self.variant, rest)

    def __len__(self) -> int:
        return len(self.elements)


@lru_cache(maxsize=64)
def build_generators(p: int, m: int, variant: str = MINIMAL) -> GeneratorSet:
    """Enumerate the tagged generating set; transfers that vanish are skipped."""
    if variant not in (FULL, MINIMAL):
        raise ValueError(f"variant must be {FULL!r} or {MINIMAL!r}, got {variant!r}")
    gens: list[Generator] = []
    for i in range(1, m + 1):
        mono = [0] * (2 * m)
        mono[2 * i - 1] = 1
        gens.append(Generator("x", (i,), tuple(mono), m, p))
    for i in range(1, m + 1):
        mono = [0] * (2 * m)
        mono[2 * i - 2] = p
        gens.append(Generator("norm", (i,), tuple(mono), m, p))
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            mono = [0] * (2 * m)
            mono[2 * i - 1] = 1
            mono[2 * j - 2] = 1
            gens.append(Generator("u", (i, j), tuple(mono), m, p))
    for E in itertools.product(range(p), repeat=m):
        total = sum(E)
        if total < p - 1:
            continue
        if variant == MINIMAL and total <= 2 * (p - 1):
            continue
        gens.append(Generator("trace", E, trace_lead(E, p), m, p))
    return GeneratorSet(m, p, variant, gens)


def lm_factorizes(
    mono: Monomial, gens: GeneratorSet
) -> list[tuple[Generator, int]] | None:
    """Write a monomial as a product of generator leads, or report failure.

    Depth-first search over exponent assignments, scanning generator leads
    in descending grevlex order; generators whose lead multidegree exceeds
    the target in some block can never contribute and are pruned up front.
    """
    target_mdeg = monomial_multidegree(mono)
    seen: set[Monomial] = set()
    candidates: list[Generator] = []
    for g in sorted(gens.elements, key=lambda g: grevlex_key(g.lead), reverse=True):
        if g.lead in seen:
            continue
        if not monomial_divides(monomial_multidegree(g.lead), target_mdeg):
            continue
        seen.add(g.lead)
        candidates.append(g)

    dead: set[tuple[int, Monomial]] = set()

    def dfs(i: int, remaining: Monomial) -> list[tuple[Generator, int]] | None:
        if not any(remaining):
            return []
        if i == len(candidates):
            return None
        if (i, remaining) in dead:
            return None
        g = candidates[i]
        lead = g.lead
        cap = None
        for le, re in zip(lead, remaining):
            if le:
                q = re // le
                cap = q if cap is None else min(cap, q)
                if cap == 0:
                    break
        cap = cap or 0
        for e in range(cap, -1, -1):
            rest = tuple(re - e * le for le, re in zip(lead, remaining))
            sub = dfs(i + 1, rest)
            if sub is not None:
                return ([(g, e)] + sub) if e else sub
        dead.add((i, remaining))
        return None

    return dfs(0, mono)


@dataclass
class SubductionResult:
    """input = sum of coeff * product(gen^e) over expression, plus remainder."""

    expression: list[tuple[int, list[tuple[Generator, int]]]]
    remainder: Polynomial

    @property
    def subducts_to_zero(self) -> bool:
        return not self.remainder


def subduct(f: Polynomial, gens: GeneratorSet) -> SubductionResult:
    """Cancel lead terms against monic generator products until stuck.

    The lead strictly decreases in grevlex at every step and total degree
    never grows, so the loop terminates; the remainder is zero or has a
    lead that does not factor over the generator leads.
    """
    if f and not is_invariant(f):
        raise NotInvariant("subduction applies to invariants only")
    work = f
    expression: list[tuple[int, list[tuple[Generator, int]]]] = []
    while work:
        mono, coeff = work.lead()
        factorization = lm_factorizes(mono, gens)
        if factorization is None:
            break
        prod = Polynomial.constant(f.m, f.p, 1)
        for g, e in factorization:
            prod = prod * g.poly() ** e
        lead_mono, lead_coeff = prod.lead()
        assert lead_mono == mono
        scale = coeff * inverse_mod(lead_coeff, f.p) % f.p
        expression.append((scale, factorization))
        work = work - prod.scale(scale)
    return SubductionResult(expression, work)


def sagbi_verify(gens: GeneratorSet, lam: MultiDegree) -> dict:
    """Factor every invariant lead of the component over the generator leads."""
    from .cpaction import invariant_basis

    failures = []
    basis = invariant_basis(gens.m, gens.p, tuple(lam))
    for f in basis:
        mono = f.lead_monomial()
        if lm_factorizes(mono, gens) is None:
            failures.append(mono)
    return {
        "multidegree": list(lam),
        "invariant_dimension": len(basis),
        "failures": failures,
        "ok": not failures,
    }


def minimality_report(p: int, m: int) -> dict:
    """Check that the minimal set has no redundant element and no gap.

    Every member must leave a nonzero remainder against the others, and
    every discarded transfer (degree between p-1 and 2(p-1)) must subduct
    to zero against the whole minimal set.
    """
    gens = build_generators(p, m, MINIMAL)
    redundant = []
    for g in gens.elements:
        result = subduct(g.poly(), gens.without(g))
        if result.subducts_to_zero:
            redundant.append(g.name())
    uncovered = []
    covered = 0
    for E in itertools.product(range(p), repeat=m):
        if not p - 1 <= sum(E) <= 2 * (p - 1):
            continue
        f = Polynomial.constant(m, p, 1)
        for i, e in enumerate(E, start=1):
            if e:
                f = f * Polynomial.y(m, p, i) ** e
        tr = transfer(f)
        if not tr:
            continue
        if subduct(tr, gens).subducts_to_zero:
            covered += 1
        else:
            uncovered.append(E)
    return {
        "p": p,
        "m": m,
        "generators": len(gens),
        "redundant": redundant,
        "small_transfers_covered": covered,
        "small_transfers_uncovered": uncovered,
        "ok": not redundant and not uncovered,
    }
