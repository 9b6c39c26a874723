import itertools
import random

import pytest
from helpers import mono

from modinv.cpaction import invariant_basis, transfer
from modinv.errors import NotInvariant
from modinv.polyring import Polynomial, iter_multidegrees
from modinv.sagbi import (
    FULL,
    MINIMAL,
    build_generators,
    lm_factorizes,
    minimality_report,
    sagbi_verify,
    subduct,
    trace_lead,
)


def names(gens):
    return sorted(g.name() for g in gens.elements)


def test_minimal_set_p2_m1():
    gens = build_generators(2, 1, MINIMAL)
    assert names(gens) == ["N(y1)", "x1"]


def test_minimal_set_p3_m2():
    gens = build_generators(3, 2, MINIMAL)
    assert names(gens) == ["N(y1)", "N(y2)", "u12", "x1", "x2"]


def test_minimal_set_p3_m3_traces():
    gens = build_generators(3, 3, MINIMAL)
    traces = sorted(g.index for g in gens.elements if g.tag == "trace")
    assert traces == [(1, 2, 2), (2, 1, 2), (2, 2, 1), (2, 2, 2)]
    assert len(gens) == 3 + 3 + 3 + 4


def test_full_set_excludes_vanishing_transfers():
    gens = build_generators(5, 2, FULL)
    assert all(sum(g.index) >= 4 for g in gens.elements if g.tag == "trace")
    # and every stored transfer really is nonzero
    for g in gens.elements:
        if g.tag == "trace":
            assert g.poly(), g.index


def test_full_set_keeps_trace_with_product_lead():
    # Tr(y^E) with |E| = p-1 leads on x^E, the same monomial an x-product
    # reaches; the full variant stores it anyway
    gens = build_generators(3, 2, FULL)
    coincident = [g for g in gens.elements if g.tag == "trace" and sum(g.index) == 2]
    assert coincident
    for g in coincident:
        assert all(v == 0 for v in g.lead[::2]), g.index
        assert lm_factorizes(g.lead, build_generators(3, 2, MINIMAL)) is not None


def test_trace_lead_matches_materialized_lead():
    for p, m in [(2, 3), (3, 2), (3, 3), (5, 2)]:
        for E in itertools.product(range(p), repeat=m):
            if sum(E) < p - 1:
                continue
            f = Polynomial.constant(m, p, 1)
            for i, e in enumerate(E, start=1):
                f = f * Polynomial.y(m, p, i) ** e
            tr = transfer(f)
            assert tr, (p, E)
            assert tr.lead_monomial() == trace_lead(E, p), (p, E)


def test_generator_leads_are_correct():
    gens = build_generators(3, 2, MINIMAL)
    for g in gens.elements:
        assert g.poly().lead_monomial() == g.lead, g.name()


def test_lm_factorizes_u_lead():
    gens = build_generators(5, 2, MINIMAL)
    out = lm_factorizes(mono(2, x1=1, y2=1), gens)
    assert out is not None
    assert [(g.name(), e) for g, e in out] == [("u12", 1)]


def test_lm_factorizes_rejects_bare_y():
    gens = build_generators(5, 2, MINIMAL)
    assert lm_factorizes(mono(2, y1=1), gens) is None


def test_lm_factorizes_small_trace_leads():
    # transfers of degree at most 2(p-1) have leads made of x's and u-leads
    for p, m in [(3, 3), (5, 2)]:
        gens = build_generators(p, m, MINIMAL)
        for E in itertools.product(range(p), repeat=m):
            if not p - 1 <= sum(E) <= 2 * (p - 1):
                continue
            assert lm_factorizes(trace_lead(E, p), gens) is not None, (p, E)


def test_sagbi_verify_multilinear_full():
    for d in range(1, 5):
        gens = build_generators(5, d, FULL)
        report = sagbi_verify(gens, (1,) * d)
        assert report["ok"], report


def test_sagbi_verify_degree_p_component():
    for p in [2, 3, 5]:
        gens = build_generators(p, 1, MINIMAL)
        report = sagbi_verify(gens, (p,))
        assert report["ok"], report


def test_sagbi_verify_21_p3():
    gens = build_generators(3, 2, MINIMAL)
    report = sagbi_verify(gens, (2, 1))
    assert report["ok"], report


def test_sagbi_verify_full_and_minimal_agree():
    for p, m in [(2, 2), (3, 2), (3, 3)]:
        full = build_generators(p, m, FULL)
        minimal = build_generators(p, m, MINIMAL)
        for total in range(0, 5):
            for lam in iter_multidegrees(m, total):
                a = sagbi_verify(full, lam)["ok"]
                b = sagbi_verify(minimal, lam)["ok"]
                assert a and b, (p, m, lam)


def test_subduct_generator_is_trivial():
    gens = build_generators(5, 2, MINIMAL)
    u = Polynomial.u(2, 5, 1, 2)
    result = subduct(u, gens)
    assert result.subducts_to_zero
    assert len(result.expression) == 1
    coeff, factorization = result.expression[0]
    assert coeff == 1
    assert [(g.name(), e) for g, e in factorization] == [("u12", 1)]


def test_subduct_small_trace_to_zero():
    p, m = 3, 3
    f = Polynomial.y(m, p, 1) * Polynomial.y(m, p, 2) * Polynomial.y(m, p, 3)
    result = subduct(transfer(f), build_generators(p, m, MINIMAL))
    assert result.subducts_to_zero


def test_subduct_reconstructs_input():
    rng = random.Random(8)
    for p, m in [(3, 2), (3, 3), (5, 2)]:
        gens = build_generators(p, m, MINIMAL)
        for _ in range(6):
            lam = tuple(rng.randrange(0, 4) for _ in range(m))
            for f in invariant_basis(m, p, lam):
                result = subduct(f, gens)
                rebuilt = result.remainder
                for coeff, factorization in result.expression:
                    prod = Polynomial.constant(m, p, coeff)
                    for g, e in factorization:
                        prod = prod * g.poly() ** e
                    rebuilt = rebuilt + prod
                assert rebuilt == f, (p, m, lam)


def test_subduct_big_trace_fails_against_others():
    p, m = 3, 3
    gens = build_generators(p, m, MINIMAL)
    target = next(g for g in gens.elements if g.tag == "trace" and g.index == (2, 2, 1))
    result = subduct(target.poly(), gens.without(target))
    assert not result.subducts_to_zero


def test_subduct_rejects_non_invariant():
    gens = build_generators(3, 1, MINIMAL)
    with pytest.raises(NotInvariant):
        subduct(Polynomial.y(1, 3, 1), gens)


def test_minimality_report_p3_m3():
    report = minimality_report(3, 3)
    assert report["ok"], report
    assert report["generators"] == 13


def test_minimality_report_p2_m2():
    report = minimality_report(2, 2)
    assert report["ok"], report
    assert report["generators"] == 5


def test_minimality_report_p3_m1():
    report = minimality_report(3, 1)
    assert report["ok"], report
    assert report["generators"] == 2
