"""Report builders shared by the API service and the command line.

Every builder returns a JSON-ready dict with a fixed key order, integer
values and string-keyed summand maps, so serialized reports are byte-stable
across runs and worker-pool sizes.
"""

from __future__ import annotations

from . import cpaction, paths, polarize, sagbi, sl2
from .errors import InfeasibleSize
from .polyring import iter_multidegrees, monomial_str

MAX_COMPONENT_DIM = 20000


def counts_report(p: int, dmax: int) -> dict:
    tables = paths.count_tables(dmax, p)
    return {
        "p": p,
        "dmax": dmax,
        "mu": [list(row) for row in tables.mu],
        "nu": [list(row) for row in tables.nu],
        "nu_bar": list(tables.nu_bar),
    }


def paths_report(p: int, d: int) -> dict:
    entries = []
    pdp = idp = 0
    for path, cls in paths.enumerate_paths(d, p):
        entry: dict = {"word": path.word, "class": cls.kind}
        if cls.kind == paths.PDP:
            pdp += 1
            entry["finishing_height"] = cls.finishing_height
        else:
            idp += 1
        entry["summand_dimension"] = cls.summand_dimension(p)
        entries.append(entry)
    return {"p": p, "d": d, "pdp_count": pdp, "idp_count": idp, "paths": entries}


def tensor_report(p: int, d: int) -> dict:
    summands: dict[int, int] = {}
    for _, dim in paths.tensor_decompose(d, p):
        summands[dim] = summands.get(dim, 0) + 1
    return {
        "p": p,
        "d": d,
        "summands": {str(k): summands[k] for k in sorted(summands)},
        "total_dimension": 2**d,
        "summand_count": sum(summands.values()),
    }


def decompose_report(p: int, multidegree: list[int], method: str = "rank") -> dict:
    lam = tuple(multidegree)
    m = len(lam)
    reduced = tuple(v % p for v in lam)
    dim = 1
    for v in reduced:
        dim *= v + 1
    if dim > MAX_COMPONENT_DIM:
        raise InfeasibleSize(
            f"reduced component dimension {dim} exceeds the supported {MAX_COMPONENT_DIM}"
        )
    if method == "rank":
        full = cpaction.decompose_component(m, p, reduced)
        extra = cpaction.periodicity_reduce(m, p, lam).projective_count
        projective = [0] * p
        projective[p - 1] = extra
        dec = full + cpaction.ModuleDecomposition(p, tuple(projective))
    elif method == "paths":
        dec = polarize.decompose_component_via_paths(m, p, lam)
    else:
        raise ValueError(f"method must be 'rank' or 'paths', got {method!r}")
    return {
        "p": p,
        "multidegree": list(lam),
        "summands": {str(k): v for k, v in sorted(dec.as_dict().items())},
    }


def _sagbi_component(args: tuple[int, int, str, tuple[int, ...]]) -> dict:
    p, m, variant, lam = args
    gens = sagbi.build_generators(p, m, variant)
    return sagbi.sagbi_verify(gens, lam)


def sagbi_report(p: int, m: int, max_total_degree: int, variant: str, jobs: int = 1) -> dict:
    """Factorize the invariant leads of every component up to a degree bound."""
    work = [
        (p, m, variant, lam)
        for total in range(0, max_total_degree + 1)
        for lam in iter_multidegrees(m, total)
    ]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_sagbi_component, work))
    else:
        outcomes = [_sagbi_component(item) for item in work]
    failures = []
    checked_invariants = 0
    for outcome in outcomes:
        checked_invariants += outcome["invariant_dimension"]
        for mono in outcome["failures"]:
            failures.append(
                {"multidegree": outcome["multidegree"], "lead": monomial_str(mono)}
            )
    gens = sagbi.build_generators(p, m, variant)
    return {
        "p": p,
        "m": m,
        "variant": variant,
        "max_total_degree": max_total_degree,
        "generator_count": len(gens),
        "components_checked": len(work),
        "invariants_checked": checked_invariants,
        "failures": failures,
        "ok": not failures,
    }


def sl2_report(p: int, m: int, dmax: int, budget_secs: float | None = None) -> dict:
    report = sl2.minimal_generators_sl2(p, m, dmax, budget_secs)
    return {
        "p": p,
        "m": m,
        "dmax": dmax,
        "per_degree": {str(d): report.per_degree[d] for d in sorted(report.per_degree)},
        "total_generators": report.total_generators,
        "noether_number": report.noether_number,
        "noether_bound": report.bound(),
        "s_m_size": report.s_m_size,
    }


def selftest_report(level: str, jobs: int = 1, seed: int = 0) -> dict:
    from .selftest import run_selftest

    return run_selftest(level, jobs, seed)
