import math

import pytest
from helpers import mono

from modinv.cpaction import apply_sigma, decompose_component, is_invariant, length, transfer
from modinv.errors import NotInDomain
from modinv.paths import (
    IDP,
    NEITHER,
    PDP,
    LatticePath,
    classify_path,
    count_tables,
    enumerate_paths,
    lambda_monomial,
    match_path,
    tensor_decompose,
    theta,
    theta_prime,
)
from modinv.polyring import Polynomial

PRIMES = [2, 3, 5, 7]


def test_classify_examples():
    assert classify_path(LatticePath("xy"), 5) == classify_path(LatticePath("xy"), 3)
    assert classify_path(LatticePath("xy"), 5).kind == PDP
    assert classify_path(LatticePath("xy"), 5).finishing_height == 0
    assert classify_path(LatticePath("xx"), 3).kind == IDP
    for p in PRIMES:
        assert classify_path(LatticePath("yx"), p).kind == NEITHER
    assert classify_path(LatticePath(""), 5) == classify_path(LatticePath(""), 2)
    assert classify_path(LatticePath(""), 2).kind == PDP
    assert classify_path(LatticePath(""), 2).finishing_height == 0


def test_classify_escape_before_crossing():
    # touches level 2 = p-1 at step 2, so later crossings are allowed
    assert classify_path(LatticePath("xxyyy"), 3).kind == IDP
    # crosses at step 2 without having escaped
    assert classify_path(LatticePath("xyyxx"), 3).kind == NEITHER
    # PDP of height exactly p-1 counts as an escape
    assert classify_path(LatticePath("xx"), 3).kind == IDP
    assert classify_path(LatticePath("xx"), 5).kind == PDP


def test_enumerate_length_zero():
    out = enumerate_paths(0, 5)
    assert len(out) == 1
    assert out[0][0].word == ""
    assert out[0][1] == classify_path(LatticePath(""), 5)


def test_enumerate_d5_p7():
    out = enumerate_paths(5, 7)
    by_height = {}
    idp = 0
    for _, cls in out:
        if cls.kind == IDP:
            idp += 1
        else:
            by_height[cls.finishing_height] = by_height.get(cls.finishing_height, 0) + 1
    assert by_height == {1: 5, 3: 4, 5: 1}
    assert idp == 0


def test_enumerate_d3_p3_idp_count():
    out = enumerate_paths(3, 3)
    assert sum(1 for _, cls in out if cls.kind == IDP) == 2


def test_enumerate_is_word_ordered():
    words = [path.word for path, _ in enumerate_paths(4, 5)]
    assert words == sorted(words)


def test_count_tables_initial_and_examples():
    t = count_tables(4, 3)
    assert t.mu[1][2] == 1 and sum(t.mu[1]) == 1
    assert t.mu[4][3] == 5
    t2 = count_tables(4, 2)
    assert t2.mu[4][2] == 8
    assert t2.nu_bar[4] == 8


def test_count_tables_match_enumeration():
    for p in PRIMES:
        tables = count_tables(8, p)
        for d in range(9):
            seen_nu = [0] * (p - 1)
            seen_bar = 0
            for _, cls in enumerate_paths(d, p):
                if cls.kind == IDP:
                    seen_bar += 1
                else:
                    seen_nu[cls.finishing_height] += 1
            assert list(tables.nu[d]) == seen_nu, (p, d)
            assert tables.nu_bar[d] == seen_bar, (p, d)


def test_counting_corollary_small():
    for p in PRIMES:
        tables = count_tables(8, p)
        for d in range(9):
            for h in range(1, p):
                assert tables.mu[d][h] == tables.nu[d][h - 1], (p, d, h)
            assert tables.mu[d][p] == tables.nu_bar[d], (p, d)


def test_mu_weighted_sum_is_power_of_two():
    for p in PRIMES:
        tables = count_tables(10, p)
        for d in range(11):
            assert sum(h * tables.mu[d][h] for h in range(1, p + 1)) == 2**d


def test_match_xy():
    m = match_path(LatticePath("xy"), 5)
    assert m.rho == {2: 1}
    assert m.i3 == ()


def test_match_xyxxy():
    m = match_path(LatticePath("xyxxy"), 7)
    assert m.rho == {2: 1, 5: 4}
    assert m.i3 == (3,)
    assert m.i1 == (2, 5)
    assert m.i2 == (1, 4)


def test_match_xxyy():
    m = match_path(LatticePath("xxyy"), 7)
    assert m.rho == {3: 2, 4: 1}
    assert m.i3 == ()


def test_match_idp_prefix():
    # prefix of first escape for p=3 is "xx"; the tail splits into I4/I5
    m = match_path(LatticePath("xxyxy"), 3)
    assert m.prefix_length == 2
    assert m.i3 == (1, 2)
    assert m.i4 == (4,)
    assert m.i5 == (3, 5)


def test_match_rejects_neither():
    with pytest.raises(NotInDomain):
        match_path(LatticePath("yx"), 5)


def test_matching_cardinalities_sweep():
    # |I1| = |I2|, the prefix splits as I1 + I2 + I3 with |I3| the finishing
    # height of the matched prefix, and rho is strictly decreasing-compatible
    for p in PRIMES:
        for d in range(0, 8):
            for path, cls in enumerate_paths(d, p):
                m = match_path(path, p)
                s = m.prefix_length
                assert len(m.i1) == len(m.i2)
                assert set(m.i1) | set(m.i2) | set(m.i3) == set(range(1, s + 1))
                assert not (set(m.i1) & set(m.i2)) and not (set(m.i1) & set(m.i3))
                for j, i in m.rho.items():
                    assert i < j
                    assert path.word[i - 1] == "x" and path.word[j - 1] == "y"
                if cls.kind == PDP:
                    assert s == d
                    assert len(m.i3) == cls.finishing_height
                    assert len(m.i1) == (d - cls.finishing_height) // 2
                else:
                    assert len(m.i3) == p - 1
                    assert len(m.i1) == (s - p + 1) // 2
                    assert set(m.i4) | set(m.i5) == set(range(s + 1, d + 1))


def test_lambda_monomial_examples():
    assert lambda_monomial(LatticePath("xy")) == mono(2, x1=1, y2=1)
    assert lambda_monomial(LatticePath("xyxxy")) == mono(5, x1=1, y2=1, x3=1, x4=1, y5=1)
    assert lambda_monomial(LatticePath("xxxyy")) == mono(5, x1=1, x2=1, x3=1, y4=1, y5=1)


def test_theta_xy():
    for p in [3, 5, 7]:
        f = theta(LatticePath("xy"), p)
        assert f == Polynomial.u(2, p, 1, 2)
        assert f.lead_monomial() == mono(2, x1=1, y2=1)


def test_theta_xx_p3():
    f = theta(LatticePath("xx"), 3)
    assert f == transfer(Polynomial.y(2, 3, 1) * Polynomial.y(2, 3, 2))
    assert f.lead_monomial() == mono(2, x1=1, x2=1)
    assert f.terms[mono(2, x1=1, x2=1)] == 2


def test_theta_xyx():
    for p in [5, 7]:
        f = theta(LatticePath("xyx"), p)
        assert f == Polynomial.u(3, p, 1, 2) * Polynomial.x(3, p, 3)
        assert length(f) == 2


def test_theta_properties_sweep():
    for p in PRIMES:
        for d in range(0, 6):
            for path, cls in enumerate_paths(d, p):
                f = theta(path, p)
                assert is_invariant(f), (p, path.word)
                assert f.lead_monomial() == lambda_monomial(path), (p, path.word)
                if d:
                    expected = cls.finishing_height + 1 if cls.kind == PDP else p
                    assert length(f) == expected, (p, path.word)


def test_theta_idp_is_transfer_of_theta_prime():
    for p in [2, 3, 5]:
        for d in range(1, 6):
            for path, cls in enumerate_paths(d, p):
                if cls.kind == IDP:
                    assert theta(path, p) == transfer(theta_prime(path, p)), (p, path.word)


def test_theta_prime_generates_theta_for_pdp():
    # (sigma - 1)^h applied to theta' gives h! theta on partial Dyck paths
    for p in [3, 5, 7]:
        for d in range(1, 5):
            for path, cls in enumerate_paths(d, p):
                if cls.kind != PDP:
                    continue
                h = cls.finishing_height
                g = theta_prime(path, p)
                for _ in range(h):
                    g = apply_sigma(g) - g
                assert g == theta(path, p).scale(math.factorial(h)), (p, path.word)


def test_tensor_decompose_examples():
    for p in [3, 5, 7]:
        dims = sorted(dim for _, dim in tensor_decompose(2, p))
        assert dims == [1, 3]
    assert [dim for _, dim in tensor_decompose(1, 7)] == [2]
    agg = {}
    for _, dim in tensor_decompose(5, 7):
        agg[dim] = agg.get(dim, 0) + 1
    assert agg == {2: 5, 4: 4, 6: 1}


def test_tensor_decompose_matches_component():
    for p in PRIMES:
        for d in range(0, 7):
            agg = {}
            total = 0
            for _, dim in tensor_decompose(d, p):
                agg[dim] = agg.get(dim, 0) + 1
                total += dim
            assert total == 2**d
            if d:
                dec = decompose_component(d, p, (1,) * d)
                assert agg == dec.as_dict(), (p, d)


def test_lambda_image_is_invariant_lead_set():
    from modinv.cpaction import invariant_basis

    for p in [2, 3, 5]:
        for d in range(1, 6):
            image = {lambda_monomial(path) for path, _ in enumerate_paths(d, p)}
            leads = {f.lead_monomial() for f in invariant_basis(d, p, (1,) * d)}
            assert image == leads, (p, d)
