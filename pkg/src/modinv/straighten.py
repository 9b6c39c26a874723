"""Rewriting products of determinant invariants into non-crossing form.

A product of u_ij's and x_i's is drawn as directed chords on m labelled
vertices.  A crossing pair u_ik u_jl (i < j < k < l) rewrites to
u_ij u_kl + u_il u_jk; iterating terminates because each rewrite strictly
decreases the pair (total chord span, -total squared span) in lexicographic
order.  The non-crossing support is the natural basis for the subring the
u's and x's generate, and the height criterion on a product's lead monomial
predicts which indecomposable summand its invariant spans.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RelationFailed
from .polyring import Polynomial

Edge = tuple[int, int]


@dataclass(frozen=True)
class UProduct:
    """A monomial in the x's and u's: prod x_i^(a_i) * prod u_ij over edges.

    ``edges`` lists (i, j) pairs with i < j, repetition allowed, kept sorted.
    """

    m: int
    x_exp: tuple[int, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if len(self.x_exp) != self.m:
            raise ValueError(f"x exponent vector has {len(self.x_exp)} entries for m={self.m}")
        for i, j in self.edges:
            if not 1 <= i < j <= self.m:
                raise ValueError(f"edge ({i}, {j}) is not increasing within 1..{self.m}")
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @property
    def degree(self) -> int:
        return sum(self.x_exp) + 2 * len(self.edges)

    def multidegree(self) -> tuple[int, ...]:
        out = list(self.x_exp)
        for i, j in self.edges:
            out[i - 1] += 1
            out[j - 1] += 1
        return tuple(out)

    def expand(self, p: int) -> Polynomial:
        out = Polynomial.constant(self.m, p, 1)
        for i, a in enumerate(self.x_exp, start=1):
            if a:
                out = out * Polynomial.x(self.m, p, i) ** a
        for i, j in self.edges:
            out = out * Polynomial.u(self.m, p, i, j)
        return out

    def first_crossing(self) -> tuple[Edge, Edge] | None:
        """First crossing pair scanning the sorted edge list lexicographically."""
        edges = self.edges
        for s in range(len(edges)):
            for t in range(s + 1, len(edges)):
                a, b = edges[s]
                c, d = edges[t]
                if a < c < b < d:
                    return (a, b), (c, d)
                if c < a < d < b:
                    return (c, d), (a, b)
        return None

    def is_noncrossing(self) -> bool:
        return self.first_crossing() is None

    def replace_edges(self, old: tuple[Edge, Edge], new: tuple[Edge, Edge]) -> "UProduct":
        edges = list(self.edges)
        for e in old:
            edges.remove(e)
        edges.extend(new)
        return UProduct(self.m, self.x_exp, tuple(edges))


def uncross(product: UProduct, p: int) -> list[tuple[int, UProduct]]:
    """Rewrite into a signed sum of non-crossing products with the same value."""
    pending = [(1, product)]
    result: dict[UProduct, int] = {}
    while pending:
        coeff, item = pending.pop()
        crossing = item.first_crossing()
        if crossing is None:
            c = (result.get(item, 0) + coeff) % p
            if c:
                result[item] = c
            else:
                result.pop(item, None)
            continue
        (i, k), (j, l) = crossing
        # u_ik u_jl = u_ij u_kl + u_il u_jk
        pending.append((coeff, item.replace_edges(((i, k), (j, l)), ((i, j), (k, l)))))
        pending.append((coeff, item.replace_edges(((i, k), (j, l)), ((i, l), (j, k)))))
    ordered = sorted(result.items(), key=lambda kv: (kv[0].x_exp, kv[0].edges))
    return [(coeff, item) for item, coeff in ordered]


def verify_relations(m: int, p: int) -> dict[str, int]:
    """Expand the three-term and Pluecker families and insist on exact zero."""
    three_term = 0
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            for k in range(j + 1, m + 1):
                rel = (
                    Polynomial.x(m, p, i) * Polynomial.u(m, p, j, k)
                    - Polynomial.x(m, p, j) * Polynomial.u(m, p, i, k)
                    + Polynomial.x(m, p, k) * Polynomial.u(m, p, i, j)
                )
                if rel:
                    raise RelationFailed(f"three-term relation failed at ({i}, {j}, {k}) mod {p}")
                three_term += 1
    plucker = 0
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            for k in range(j + 1, m + 1):
                for l in range(k + 1, m + 1):
                    rel = (
                        Polynomial.u(m, p, i, j) * Polynomial.u(m, p, k, l)
                        - Polynomial.u(m, p, i, k) * Polynomial.u(m, p, j, l)
                        + Polynomial.u(m, p, i, l) * Polynomial.u(m, p, j, k)
                    )
                    if rel:
                        raise RelationFailed(
                            f"Pluecker relation failed at ({i}, {j}, {k}, {l}) mod {p}"
                        )
                    plucker += 1
    return {"three_term": three_term, "plucker": plucker}


def summand_length_of_product(product: UProduct, p: int) -> int:
    """Dimension of the summand attached to the product's lead monomial.

    Some cut r makes the left-hand x-steps plus the spanning edges reach
    p-1 exactly when the lead monomial belongs to an element of the
    transfer image; that slot in the decomposition bookkeeping is then
    projective.  When no cut fires, the expanded product itself has length
    1 + (number of x factors).  The expanded product's own length can drop
    below p in the fired case: its lead is shared with a transfer element
    without the product lying in the transfer image.
    """
    for r in range(1, product.m + 1):
        reach = sum(product.x_exp[:r])
        for i, j in product.edges:
            if i <= r <= j:
                reach += 1
        if reach >= p - 1:
            return p
    return 1 + sum(product.x_exp)
