"""Polarisation to multilinear pieces and restitution back down.

Splitting block i into lambda_i fresh blocks turns a multidegree-lambda
polynomial into a multilinear one; erasing the subscripts again multiplies
by the product of the lambda_i factorials.  Symmetrizing over permutations
of the copies cuts out exactly the polarised image, which is how graded
components of the base ring inherit the tensor-power decomposition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from .cpaction import component, periodicity_reduce
from .errors import NotMultihomogeneous
from .ffield import rank_array
from .polyring import Monomial, MultiDegree, Polynomial


@dataclass(frozen=True)
class BlockSplit:
    """Splitting of m source blocks into runs of sizes (lambda_1, ..., lambda_m)."""

    sizes: tuple[int, ...]

    @property
    def source_blocks(self) -> int:
        return len(self.sizes)

    @property
    def target_blocks(self) -> int:
        return sum(self.sizes)

    def provenance(self) -> tuple[int, ...]:
        """Source block (1-based) of each target block, in target order."""
        out = []
        for i, size in enumerate(self.sizes, start=1):
            out.extend([i] * size)
        return tuple(out)

    def offsets(self) -> tuple[int, ...]:
        """Zero-based target offset where each source block's run starts."""
        out = []
        acc = 0
        for size in self.sizes:
            out.append(acc)
            acc += size
        return tuple(out)

    def symmetry_order(self) -> int:
        order = 1
        for size in self.sizes:
            order *= factorial(size)
        return order


def polarize_full(f: Polynomial, lam: MultiDegree | None = None) -> Polynomial:
    """Full polarisation: the multilinear multidegree-(1, ..., 1) piece.

    Each term prod x_i^(a_i) y_i^(b_i) contributes a_i! b_i! times the sum
    over the ways to hand its block-i exponents to distinct copies.  When
    some a_i or b_i reaches p the factorial kills the block and the term
    drops out; restitution then recovers (prod lambda_i!) f.
    """
    if not f:
        if lam is None:
            raise NotMultihomogeneous("cannot infer the multidegree of the zero polynomial")
        return Polynomial.zero(sum(lam), f.p)
    inferred = f.multidegree()
    if lam is None:
        lam = inferred
    elif tuple(lam) != inferred:
        raise NotMultihomogeneous(f"polynomial has multidegree {inferred}, expected {tuple(lam)}")
    split = BlockSplit(tuple(lam))
    m_target = split.target_blocks
    p = f.p
    offsets = split.offsets()
    out: dict[Monomial, int] = {}
    for mono, coeff in f.terms.items():
        scale = coeff
        choices: list[list[tuple[int, ...]]] = []
        for i in range(f.m):
            ey = mono[2 * i]
            ex = mono[2 * i + 1]
            scale = scale * factorial(ex) * factorial(ey) % p
            if scale == 0:
                break
            choices.append(list(itertools.combinations(range(lam[i]), ex)))
        if scale == 0:
            continue
        for pick in itertools.product(*choices):
            target = [0] * (2 * m_target)
            for i in range(f.m):
                xs = set(pick[i])
                for j in range(lam[i]):
                    t = offsets[i] + j
                    if j in xs:
                        target[2 * t + 1] = 1
                    else:
                        target[2 * t] = 1
            key = tuple(target)
            s = (out.get(key, 0) + scale) % p
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return Polynomial(m_target, p, out)


def restitute(f: Polynomial, split: BlockSplit) -> Polynomial:
    """Erase subscripts: send every copy variable back to its source variable."""
    if f.m != split.target_blocks:
        raise ValueError(
            f"polynomial lives in {f.m} blocks but the split produces {split.target_blocks}"
        )
    m_source = split.source_blocks
    provenance = split.provenance()
    out: dict[Monomial, int] = {}
    for mono, coeff in f.terms.items():
        target = [0] * (2 * m_source)
        for t in range(f.m):
            src = provenance[t] - 1
            target[2 * src] += mono[2 * t]
            target[2 * src + 1] += mono[2 * t + 1]
        key = tuple(target)
        s = (out.get(key, 0) + coeff) % f.p
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return Polynomial(m_source, f.p, out)


def young_symmetrize(f: Polynomial, split: BlockSplit) -> Polynomial:
    """Sum of f over all permutations of the copies within each source block."""
    if f.m != split.target_blocks:
        raise ValueError(
            f"polynomial lives in {f.m} blocks but the split produces {split.target_blocks}"
        )
    offsets = split.offsets()
    out: dict[Monomial, int] = {}
    per_block = [list(itertools.permutations(range(size))) for size in split.sizes]
    for assignment in itertools.product(*per_block):
        perm = list(range(f.m))
        for i, block_perm in enumerate(assignment):
            for j, image in enumerate(block_perm):
                perm[offsets[i] + j] = offsets[i] + image
        for mono, coeff in f.terms.items():
            target = [0] * (2 * f.m)
            for t in range(f.m):
                target[2 * perm[t]] = mono[2 * t]
                target[2 * perm[t] + 1] = mono[2 * t + 1]
            key = tuple(target)
            s = (out.get(key, 0) + coeff) % f.p
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return Polynomial(f.m, f.p, out)


def nabla_project(f: Polynomial, m: int, lam: MultiDegree) -> Polynomial:
    """Substitute x -> x_1 + ... + x_m, y -> y_1 + ... + y_m into a one-block
    polynomial and keep the multidegree-lambda piece."""
    if f.m != 1:
        raise ValueError("nabla_project expects a one-block polynomial")
    if len(lam) != m:
        raise ValueError(f"multidegree has {len(lam)} entries for m={m}")
    p = f.p
    total = sum(lam)
    out: dict[Monomial, int] = {}
    for mono, coeff in f.terms.items():
        ey, ex = mono
        if ex + ey != total:
            continue
        _split_term(out, coeff, ex, ey, lam, m, p)
    return Polynomial(m, p, out)


def _split_term(out, coeff, ex, ey, lam, m, p):
    def rec(i, ex_left, ey_left, acc, c):
        if c == 0:
            return
        if i == m:
            if ex_left == 0 and ey_left == 0:
                key = tuple(acc)
                s = (out.get(key, 0) + c) % p
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
            return
        for a in range(min(lam[i], ex_left) + 1):
            b = lam[i] - a
            if b > ey_left:
                continue
            c2 = c * comb(ex_left, a) % p * comb(ey_left, b) % p
            rec(i + 1, ex_left - a, ey_left - b, acc + [b, a], c2)

    rec(0, ex, ey, [], coeff % p)


def decompose_component_via_paths(m: int, p: int, lam: MultiDegree):
    """Multiplicities of a graded component through the path pipeline.

    Entries >= p are first periodicity-reduced (each reduction step only
    sheds projectives).  Each admissible path of length |reduced lambda|
    yields an invariant; symmetrizing over the copy permutations and
    restituting gives socle vectors of the component, and the cumulative
    ranks by summand size read off the multiplicities.
    """
    from .cpaction import ModuleDecomposition
    from .paths import enumerate_paths, theta

    lam = tuple(lam)
    reduction = periodicity_reduce(m, p, lam)
    reduced = reduction.reduced
    extra_projectives = reduction.projective_count

    split = BlockSplit(reduced)
    d = split.target_blocks
    comp = component(m, p, reduced)
    by_length: dict[int, list[np.ndarray]] = {}
    for path, cls in enumerate_paths(d, p):
        size = cls.summand_dimension(p)
        f = theta(path, p)
        sym = young_symmetrize(f, split)
        if not sym:
            continue
        rest = restitute(sym, split)
        if not rest:
            continue
        by_length.setdefault(size, []).append(comp.to_vector(rest))

    mult = [0] * p
    stacked: list[np.ndarray] = []
    prev_rank = 0
    for h in range(p, 0, -1):
        stacked.extend(by_length.get(h, []))
        rank = rank_array(np.array(stacked, dtype=np.int64), p) if stacked else 0
        mult[h - 1] = rank - prev_rank
        prev_rank = rank
    mult[p - 1] += extra_projectives
    return ModuleDecomposition(p, tuple(mult))
