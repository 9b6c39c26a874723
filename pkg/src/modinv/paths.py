"""Lattice paths below the diagonal and the invariants they index.

A path is a word over {x, y}; its level after k steps is #x - #y.  Paths
that stay on or below the diagonal with height at most p-2 (partial Dyck
paths) index socles of small summands of the d-fold tensor power of the
plane; paths that reach level p-1 before ever crossing the diagonal
(initial Dyck paths of escape height p-1) index projective summands.  The
greedy matching of y-steps to earlier x-steps turns each admissible path
into an explicit invariant whose lead monomial reads off the path.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cpaction import transfer
from .errors import NotInDomain, UnmatchedY
from .polyring import Monomial, Polynomial

PDP = "pdp"
IDP = "idp"
NEITHER = "neither"


@dataclass(frozen=True)
class LatticePath:
    """A word over {x, y}; step i is an x-step or a y-step."""

    word: str

    def __post_init__(self) -> None:
        if any(ch not in "xy" for ch in self.word):
            raise ValueError(f"path words use only 'x' and 'y', got {self.word!r}")

    @property
    def length(self) -> int:
        return len(self.word)

    def levels(self) -> list[int]:
        """Prefix levels #x - #y, starting from 0."""
        out = [0]
        for ch in self.word:
            out.append(out[-1] + (1 if ch == "x" else -1))
        return out

    @property
    def height(self) -> int:
        return max(self.levels())

    @property
    def finishing_height(self) -> int:
        levels = self.levels()
        return levels[-1]

    def __str__(self) -> str:
        return self.word or "(empty)"


@dataclass(frozen=True)
class PathClass:
    kind: str
    finishing_height: int | None = None

    def summand_dimension(self, p: int) -> int:
        if self.kind == PDP:
            return self.finishing_height + 1
        if self.kind == IDP:
            return p
        raise NotInDomain("paths outside the two admissible classes have no summand")


def classify_path(path: LatticePath, p: int) -> PathClass:
    """Sort a path into PDP(h) with h <= p-2, IDP of escape height p-1, or neither."""
    escape = p - 1
    level = 0
    first_negative = None
    first_escape = None
    for k, ch in enumerate(path.word, start=1):
        level += 1 if ch == "x" else -1
        if level < 0 and first_negative is None:
            first_negative = k
        if level == escape and first_escape is None:
            first_escape = k
    if first_escape is not None and (first_negative is None or first_escape < first_negative):
        return PathClass(IDP)
    if first_negative is None and path.height <= p - 2:
        return PathClass(PDP, path.finishing_height)
    return PathClass(NEITHER)


def enumerate_paths(d: int, p: int) -> list[tuple[LatticePath, PathClass]]:
    """All admissible paths of length d, ordered by word with x before y."""
    out = []
    for bits in range(1 << d):
        word = "".join("y" if (bits >> (d - 1 - i)) & 1 else "x" for i in range(d))
        path = LatticePath(word)
        cls = classify_path(path, p)
        if cls.kind != NEITHER:
            out.append((path, cls))
    return out


@dataclass(frozen=True)
class CountTables:
    """Recursion tables for summand and path counts up to a length bound.

    ``mu[d][h]`` counts V_h summands of the d-fold tensor power (1 <= h <= p,
    index 0 unused).  ``nu[d][h]`` counts partial Dyck paths of length d,
    height at most p-2 and finishing height h (0 <= h <= p-2; the h = 0
    column is kept even though the class definition starts at 1, since the
    initial condition and the recursion both need it).  ``nu_bar[d]`` counts
    initial Dyck paths of escape height p-1.
    """

    p: int
    dmax: int
    mu: tuple[tuple[int, ...], ...]
    nu: tuple[tuple[int, ...], ...]
    nu_bar: tuple[int, ...]


def count_tables(dmax: int, p: int) -> CountTables:
    """Fill all three tables by their recursions from the stated seeds."""
    if dmax < 0:
        raise ValueError("dmax must be non-negative")

    # mu: tensor-power side.  For p >= 3 the recursion mirrors
    # V_h (x) V_2 = V_(h-1) + V_(h+1) with reflections at both walls; for
    # p = 2 the plane is already projective and doubles each step.
    mu_rows = []
    if p == 2:
        row = [0, 1, 0]
        mu_rows.append(tuple(row))
        for d in range(1, dmax + 1):
            mu_rows.append((0, 0, 2 ** (d - 1)))
    else:
        row = [0] * (p + 1)
        row[1] = 1
        mu_rows.append(tuple(row))
        for _ in range(dmax):
            old = mu_rows[-1]
            new = [0] * (p + 1)
            new[1] = old[2]
            for h in range(2, p - 1):
                new[h] = old[h - 1] + old[h + 1]
            new[p - 1] = old[p - 2]
            new[p] = old[p - 1] + 2 * old[p]
            mu_rows.append(tuple(new))

    # nu: path side, a reflecting walk on levels 0..p-2.
    q = p - 2
    nu_rows = []
    row = [0] * (q + 1)
    row[0] = 1
    nu_rows.append(tuple(row))
    for _ in range(dmax):
        old = nu_rows[-1]
        new = [0] * (q + 1)
        for h in range(q + 1):
            acc = 0
            if h - 1 >= 0:
                acc += old[h - 1]
            if h + 1 <= q:
                acc += old[h + 1]
            new[h] = acc
        nu_rows.append(tuple(new))

    # nu_bar: escapes feed from the top nu column, then double freely.
    nu_bar = [0]
    for d in range(dmax):
        nu_bar.append(nu_rows[d][q] + 2 * nu_bar[d])

    return CountTables(p, dmax, tuple(mu_rows), tuple(nu_rows), tuple(nu_bar))


@dataclass(frozen=True)
class Matching:
    """Greedy matching of y-steps to earlier x-steps on the admissible prefix.

    Positions are 1-based.  For a partial Dyck path the prefix is the whole
    word and I4, I5 are empty; for an initial Dyck path the prefix ends at
    the first touch of level p-1 and I4, I5 split the arbitrary tail into
    its x- and y-steps.
    """

    rho: dict[int, int] = field(default_factory=dict)
    i1: tuple[int, ...] = ()
    i2: tuple[int, ...] = ()
    i3: tuple[int, ...] = ()
    i4: tuple[int, ...] = ()
    i5: tuple[int, ...] = ()
    prefix_length: int = 0


def match_path(path: LatticePath, p: int) -> Matching:
    cls = classify_path(path, p)
    if cls.kind == NEITHER:
        raise NotInDomain(f"{path.word!r} is neither a partial nor an initial Dyck path")
    if cls.kind == PDP:
        s = path.length
    else:
        s = next(
            k for k, level in enumerate(path.levels()) if level == p - 1
        )
    rho: dict[int, int] = {}
    stack: list[int] = []
    for j in range(1, s + 1):
        if path.word[j - 1] == "x":
            stack.append(j)
        else:
            if not stack:
                raise UnmatchedY(f"no unused x-step before position {j} of {path.word!r}")
            rho[j] = stack.pop()
    i1 = tuple(sorted(rho))
    i2 = tuple(sorted(rho.values()))
    i3 = tuple(sorted(stack))
    i4 = tuple(i for i in range(s + 1, path.length + 1) if path.word[i - 1] == "x")
    i5 = tuple(i for i in range(s + 1, path.length + 1) if path.word[i - 1] == "y")
    return Matching(rho, i1, i2, i3, i4, i5, s)


def lambda_monomial(path: LatticePath) -> Monomial:
    """The square-free multilinear monomial reading x_i or y_i off step i."""
    mono = [0] * (2 * path.length)
    for i, ch in enumerate(path.word, start=1):
        if ch == "x":
            mono[2 * i - 1] = 1
        else:
            mono[2 * i - 2] = 1
    return tuple(mono)


def theta(path: LatticePath, p: int) -> Polynomial:
    """The invariant attached to an admissible path.

    Partial Dyck path: the product of the matched determinants times the
    unmatched x's.  Initial Dyck path: the matched determinants times the
    transfer of the remaining y's times the tail x's; its lead coefficient
    is -1 but its lead monomial is still the path monomial.
    """
    cls = classify_path(path, p)
    matching = match_path(path, p)
    d = path.length
    out = Polynomial.constant(d, p, 1)
    for j in matching.i1:
        out = out * Polynomial.u(d, p, matching.rho[j], j)
    if cls.kind == PDP:
        for i in matching.i3:
            out = out * Polynomial.x(d, p, i)
        return out
    ys = Polynomial.constant(d, p, 1)
    for i in matching.i3 + matching.i5:
        ys = ys * Polynomial.y(d, p, i)
    out = out * transfer(ys)
    for i in matching.i4:
        out = out * Polynomial.x(d, p, i)
    return out


def theta_prime(path: LatticePath, p: int) -> Polynomial:
    """The module generator whose socle vector theta builds."""
    cls = classify_path(path, p)
    matching = match_path(path, p)
    d = path.length
    out = Polynomial.constant(d, p, 1)
    for j in matching.i1:
        out = out * Polynomial.u(d, p, matching.rho[j], j)
    for i in matching.i3 + matching.i5:
        out = out * Polynomial.y(d, p, i)
    if cls.kind == IDP:
        for i in matching.i4:
            out = out * Polynomial.x(d, p, i)
    return out


def tensor_decompose(d: int, p: int) -> list[tuple[LatticePath, int]]:
    """One summand per admissible path; dimensions follow the classification."""
    return [(path, cls.summand_dimension(p)) for path, cls in enumerate_paths(d, p)]
