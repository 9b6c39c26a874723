"""Named oracle checks runnable from the CLI and the service.

The quick level re-derives the key worked values (transfer signs, the
counting tables, the graded decomposition table, periodicity counts, the
minimal generating sets); the full level adds the property sweeps and the
three-copy special linear group computation.  Checks call through the
module surfaces so an injected arithmetic bug is caught by name.
"""

from __future__ import annotations

import math
import random
from typing import Callable

from . import cpaction, paths, polarize, polyring, sagbi, sl2, straighten
from .polyring import Polynomial

QUICK = "quick"
FULL = "full"


def _check_power_sum() -> str:
    for p in [2, 3, 5, 7, 11, 13]:
        for t in range(1, 3 * (p - 1) + 1):
            brute = sum(pow(i, t, p) for i in range(p)) % p
            if cpaction.power_sum(t, p) != brute:
                raise AssertionError(f"power sum mismatch at t={t}, p={p}")
    return "power sums match brute force for p <= 13"


def _check_transfer_oracles() -> str:
    f = Polynomial.y(2, 3, 1) * Polynomial.y(2, 3, 2)
    expected = (Polynomial.x(2, 3, 1) * Polynomial.x(2, 3, 2)).scale(2)
    if cpaction.transfer(f) != expected:
        raise AssertionError("Tr(y1 y2) != -x1 x2 mod 3")
    for p in [3, 5, 7]:
        if cpaction.transfer(Polynomial.y(1, p, 1)):
            raise AssertionError(f"Tr(y1) != 0 mod {p}")
    if cpaction.transfer(Polynomial.y(1, 3, 1) ** 2) != (Polynomial.x(1, 3, 1) ** 2).scale(2):
        raise AssertionError("Tr(y1^2) != -x1^2 mod 3")
    return "transfer worked examples hold"


def _check_norm_closed_form() -> str:
    for p in [2, 3, 5, 7]:
        x, y = Polynomial.x(1, p, 1), Polynomial.y(1, p, 1)
        if cpaction.norm(1, p, 1) != y**p - x ** (p - 1) * y:
            raise AssertionError(f"norm closed form fails mod {p}")
    return "N(y) = y^p - x^(p-1) y for p in {2, 3, 5, 7}"


def _check_order_pins() -> str:
    if polyring.grevlex_cmp((1, 0), (0, 1)) != 1:
        raise AssertionError("y1 > x1 violated")
    if Polynomial.u(2, 5, 1, 2).lead_monomial() != (0, 1, 1, 0):
        raise AssertionError("LM(u12) != x1 y2")
    if cpaction.norm(1, 5, 1).lead_monomial() != (5, 0):
        raise AssertionError("LM(N(y1)) != y1^p")
    return "order pins: y1 > x1, LM(u12) = x1 y2, LM(N) = y^p"


def _check_component_table() -> str:
    expected = {7: {2: 3, 4: 3, 6: 1}, 5: {2: 3, 4: 2, 5: 2}, 3: {3: 8}, 2: {2: 12}}
    for p, summands in expected.items():
        got = cpaction.decompose_component(4, p, (1, 1, 1, 2)).as_dict()
        if got != summands:
            raise AssertionError(f"component (1,1,1,2) mod {p}: {got} != {summands}")
    return "graded component (1,1,1,2) decomposes as tabulated for p in {2, 3, 5, 7}"


def _check_counting_tables() -> str:
    for p in [2, 3, 5, 7]:
        tables = paths.count_tables(10, p)
        for d in range(11):
            for h in range(1, p):
                if tables.mu[d][h] != tables.nu[d][h - 1]:
                    raise AssertionError(f"mu/nu mismatch at p={p}, d={d}, h={h}")
            if tables.mu[d][p] != tables.nu_bar[d]:
                raise AssertionError(f"mu/nu_bar mismatch at p={p}, d={d}")
        if p == 3:
            for d in range(11):
                if tables.mu[d][3] != (2**d - 1) // 3:
                    raise AssertionError(f"mu_3^{d}(3) != floor((2^d - 1)/3)")
        if p == 2:
            for d in range(1, 11):
                if tables.mu[d][2] != 2 ** (d - 1):
                    raise AssertionError(f"mu_2^{d}(2) != 2^(d-1)")
    return "counting recursions agree across the mu/nu bridge for p in {2, 3, 5, 7}"


def _check_tensor_decomposition() -> str:
    agg: dict[int, int] = {}
    for _, dim in paths.tensor_decompose(5, 7):
        agg[dim] = agg.get(dim, 0) + 1
    if agg != {2: 5, 4: 4, 6: 1}:
        raise AssertionError(f"5-fold tensor power mod 7: {agg}")
    for p in [3, 5, 7]:
        dims = sorted(dim for _, dim in paths.tensor_decompose(2, p))
        if dims != [1, 3]:
            raise AssertionError(f"2-fold tensor power mod {p}: {dims}")
    return "tensor powers split as 5V2 + 4V4 + V6 (d=5, p=7) and V1 + V3 (d=2)"


def _check_periodicity() -> str:
    for p in [3, 5, 7]:
        res = cpaction.periodicity_reduce(4, p, (p + 1, 1, 1, p + 2))
        if res.reduced != (1, 1, 1, 2) or res.projective_count != 4 * p + 20:
            raise AssertionError(f"periodicity at p={p}: {res}")
    if cpaction.periodicity_reduce(1, 5, (5,)).projective_count != 1:
        raise AssertionError("periodicity at lambda=(p)")
    return "periodicity sheds 4p + 20 projectives from (p+1, 1, 1, p+2)"


def _check_minimal_generating_sets() -> str:
    small = sagbi.build_generators(2, 1, sagbi.MINIMAL)
    if sorted(g.name() for g in small.elements) != ["N(y1)", "x1"]:
        raise AssertionError("minimal set for one block mod 2")
    hyper = sagbi.build_generators(3, 2, sagbi.MINIMAL)
    if len(hyper) != 5:
        raise AssertionError("minimal set for two blocks mod 3")
    threes = sagbi.build_generators(3, 3, sagbi.MINIMAL)
    traces = sorted(g.index for g in threes.elements if g.tag == "trace")
    if traces != [(1, 2, 2), (2, 1, 2), (2, 2, 1), (2, 2, 2)]:
        raise AssertionError("transfer generators for three blocks mod 3")
    return "minimal generating sets enumerate as expected"


def _check_theta_lengths() -> str:
    for p in [2, 3, 5, 7]:
        for d in range(1, 5):
            for path, cls in paths.enumerate_paths(d, p):
                f = paths.theta(path, p)
                if f.lead_monomial() != paths.lambda_monomial(path):
                    raise AssertionError(f"lead of theta({path.word}) mod {p}")
                if not cpaction.is_invariant(f):
                    raise AssertionError(f"theta({path.word}) not invariant mod {p}")
                want = cls.summand_dimension(p)
                if cpaction.length(f) != want:
                    raise AssertionError(f"length of theta({path.word}) mod {p}")
    return "theta invariants carry the classified lengths for d <= 4"


def _check_relations() -> str:
    for p in [2, 3, 5, 7]:
        straighten.verify_relations(4, p)
    return "three-term and Pluecker relations vanish exactly for m = 4"


def _check_dickson_and_lemmas() -> str:
    for p in [2, 3, 5]:
        pair = sl2.dickson(p)
        for g in (sl2.SL2Element.upper(p), sl2.SL2Element.lower(p)):
            if sl2.sl2_act(g, pair.L) != pair.L or sl2.sl2_act(g, pair.D) != pair.D:
                raise AssertionError(f"Dickson invariance mod {p}")
        for m in [2, 3]:
            if not sl2.l_identities_hold(p, m):
                raise AssertionError(f"L identities fail at p={p}, m={m}")
            if not sl2.d_lemma_holds(p, m):
                raise AssertionError(f"D lemma fails at p={p}, m={m}")
    return "Dickson pair invariant; polarisation lemmas hold for p in {2, 3, 5}, m <= 3"


def _check_relative_transfer(seed: int = 0) -> str:
    rng = random.Random(seed)
    for _ in range(15):
        p = rng.choice([3, 5])
        m = rng.choice([1, 2])
        alpha = tuple(rng.randrange(0, 3) for _ in range(m))
        beta = tuple(rng.randrange(0, 3) for _ in range(m))
        if sl2.rel_transfer_PB(m, p, alpha, beta) != sl2.borel_coset_transfer(m, p, alpha, beta):
            raise AssertionError(f"weight rule mismatch at p={p}, alpha={alpha}, beta={beta}")
    return "relative transfer weight rule matches the coset sum"


def _check_sagbi_multilinear() -> str:
    for d in range(1, 5):
        gens = sagbi.build_generators(5, d, sagbi.FULL)
        report = sagbi.sagbi_verify(gens, (1,) * d)
        if not report["ok"]:
            raise AssertionError(f"multilinear verification failed at d={d}")
    return "every multilinear invariant lead factorizes over the full set (p=5, d <= 4)"


def _check_minimality_small() -> str:
    for p, m in [(2, 2), (3, 1), (3, 2)]:
        report = sagbi.minimality_report(p, m)
        if not report["ok"]:
            raise AssertionError(f"minimality report failed at p={p}, m={m}: {report}")
    return "no redundant generator and no coverage gap on the small instances"


# ---- full-level additions ----


def _check_paths_pipeline_cross() -> str:
    for p in [2, 3, 5, 7]:
        direct = cpaction.decompose_component(4, p, (1, 1, 1, 2))
        via = polarize.decompose_component_via_paths(4, p, (1, 1, 1, 2))
        if direct != via:
            raise AssertionError(f"pipelines disagree mod {p}: {direct} vs {via}")
    return "rank-profile and path pipelines agree on (1,1,1,2) for p in {2, 3, 5, 7}"


def _check_nilpotent_derivative_sweep(seed: int = 0) -> str:
    rng = random.Random(seed + 1)
    for _ in range(50):
        p = rng.choice([3, 5, 7, 11])
        size = rng.randrange(1, min(p - 1, 4) + 1)
        m = size + rng.randrange(0, 2)
        blocks = rng.sample(range(1, m + 1), size)
        f = Polynomial.constant(m, p, 1)
        xe = Polynomial.constant(m, p, 1)
        for i in blocks:
            f = f * Polynomial.y(m, p, i)
            xe = xe * Polynomial.x(m, p, i)
        g = f
        for _ in range(size):
            g = cpaction.apply_sigma(g) - g
        if g != xe.scale(math.factorial(size)):
            raise AssertionError(f"derivative lemma fails at p={p}, blocks={blocks}")
        if cpaction.apply_sigma(g) - g:
            raise AssertionError(f"extra derivative not zero at p={p}, blocks={blocks}")
    return "(sigma-1)^{|E|} y^E = |E|! x^E on 50 random square-free monomials"


def _polarisation_sweep_impl(seed: int = 0, samples: int = 50) -> str:
    rng = random.Random(seed + 2)
    done = 0
    while done < samples:
        p = rng.choice([3, 5, 7])
        m = rng.choice([1, 2])
        lam = tuple(rng.randrange(0, min(p, 4)) for _ in range(m))
        terms = {}
        for mono in polyring.component_basis(m, lam):
            if rng.random() < 0.5:
                c = rng.randrange(0, p)
                if c:
                    terms[mono] = c
        f = Polynomial(m, p, terms)
        if not f:
            continue
        scale = 1
        for v in lam:
            scale = scale * math.factorial(v) % p
        big = polarize.polarize_full(f, lam)
        if polarize.restitute(big, polarize.BlockSplit(lam)) != f.scale(scale):
            raise AssertionError(f"restitution scale fails at p={p}, lam={lam}")
        done += 1
    return "restitution of polarisation scales by the factorial product on 50 samples"


def _check_sagbi_sweep() -> str:
    for p, m in [(2, 2), (3, 2), (5, 2), (2, 3), (3, 3)]:
        gens = sagbi.build_generators(p, m, sagbi.MINIMAL)
        for total in range(0, 7):
            for lam in polyring.iter_multidegrees(m, total):
                for f in cpaction.invariant_basis(m, p, lam):
                    if not sagbi.subduct(f, gens).subducts_to_zero:
                        raise AssertionError(f"subduction fails at p={p}, lam={lam}")
    return "every invariant with |lambda| <= 6 subducts to zero against the minimal set"


def _check_sl2_flagship() -> str:
    report = sl2.minimal_generators_sl2(3, 3, 9)
    if report.total_generators != 28 or sorted(report.per_degree) != [2, 4, 6, 8]:
        raise AssertionError(f"three-copy count mod 3: {report.per_degree}")
    if report.noether_number != 8:
        raise AssertionError(f"Noether number mod 3: {report.noether_number}")
    for m in (3, 4):
        r2 = sl2.minimal_generators_sl2(2, m, m + 1)
        if r2.noether_number != m:
            raise AssertionError(f"Noether number at p=2, m={m}: {r2.noether_number}")
    membership = sl2.verify_sm_membership(3, 2, 6)
    if not membership["ok"]:
        raise AssertionError(f"membership verification failed: {membership}")
    return "28 generators in degrees 2, 4, 6, 8 (p=3, m=3); Noether numbers match at p=2"


# (name, callable, level, takes a sample-selecting seed)
CHECKS: list[tuple[str, Callable, str, bool]] = [
    ("power_sum_brute_force", _check_power_sum, QUICK, False),
    ("transfer_oracles", _check_transfer_oracles, QUICK, False),
    ("norm_closed_form", _check_norm_closed_form, QUICK, False),
    ("monomial_order_pins", _check_order_pins, QUICK, False),
    ("component_1112_table", _check_component_table, QUICK, False),
    ("counting_tables", _check_counting_tables, QUICK, False),
    ("tensor_decomposition", _check_tensor_decomposition, QUICK, False),
    ("periodicity", _check_periodicity, QUICK, False),
    ("minimal_generating_sets", _check_minimal_generating_sets, QUICK, False),
    ("theta_lengths", _check_theta_lengths, QUICK, False),
    ("uij_relations", _check_relations, QUICK, False),
    ("dickson_lemmas", _check_dickson_and_lemmas, QUICK, False),
    ("relative_transfer_rule", _check_relative_transfer, QUICK, True),
    ("sagbi_multilinear", _check_sagbi_multilinear, QUICK, False),
    ("sagbi_minimality", _check_minimality_small, QUICK, False),
    ("pipelines_cross_check", _check_paths_pipeline_cross, FULL, False),
    ("nilpotent_derivative_sweep", _check_nilpotent_derivative_sweep, FULL, True),
    ("polarisation_sweep", _polarisation_sweep_impl, FULL, True),
    ("sagbi_subduction_sweep", _check_sagbi_sweep, FULL, False),
    ("sl2_flagship", _check_sl2_flagship, FULL, False),
]


def _run_check(args: tuple[str, int]) -> dict:
    name, seed = args
    _, fn, _, seeded = next(entry for entry in CHECKS if entry[0] == name)
    try:
        detail = fn(seed) if seeded else fn()
        return {"name": name, "ok": True, "detail": detail}
    except Exception as exc:  # noqa: BLE001 - any failure is a finding
        return {"name": name, "ok": False, "detail": f"{type(exc).__name__}: {exc}"}


def run_selftest(level: str = QUICK, jobs: int = 1, seed: int = 0) -> dict:
    """Run the oracle checks, one result entry per named check.

    The seed selects the samples for the randomized sweeps.  With jobs > 1
    the checks fan out to worker processes; results are merged in registry
    order, so the report does not depend on the pool size.
    """
    if level not in (QUICK, FULL):
        raise ValueError(f"level must be {QUICK!r} or {FULL!r}")
    work = [(name, seed) for name, _, lvl, _ in CHECKS if lvl == QUICK or level == FULL]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_check, work))
    else:
        results = [_run_check(item) for item in work]
    passed = sum(1 for r in results if r["ok"])
    return {
        "level": level,
        "checks": results,
        "passed": passed,
        "failed": len(results) - passed,
        "ok": passed == len(results),
    }
