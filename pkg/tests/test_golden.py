"""The canonical text form pinned against a golden file."""

from pathlib import Path

from modinv.cpaction import norm, transfer
from modinv.paths import LatticePath, theta
from modinv.polyring import Polynomial
from modinv.sagbi import MINIMAL, build_generators
from modinv.sl2 import L_pair, dickson

GOLDEN = Path(__file__).parent / "golden" / "polynomials.txt"


def current_renderings() -> dict[str, str]:
    gens = build_generators(3, 3, MINIMAL)
    trace = next(g for g in gens.elements if g.tag == "trace" and g.index == (2, 2, 1))
    return {
        "u12_p5": str(Polynomial.u(2, 5, 1, 2)),
        "norm_p2": str(norm(1, 2, 1)),
        "norm_p3": str(norm(1, 3, 1)),
        "norm_p7": str(norm(1, 7, 1)),
        "transfer_y1y2_p3": str(transfer(Polynomial.y(2, 3, 1) * Polynomial.y(2, 3, 2))),
        "transfer_y1sq_y2sq_p3": str(
            transfer(Polynomial.y(2, 3, 1) ** 2 * Polynomial.y(2, 3, 2) ** 2)
        ),
        "theta_xyx_p7": str(theta(LatticePath("xyx"), 7)),
        "theta_xxy_p3": str(theta(LatticePath("xxy"), 3)),
        "dickson_L_p3": str(dickson(3).L),
        "dickson_D_p2": str(dickson(2).D),
        "L_pair_12_p3": str(L_pair(3, 2, 1, 2)),
        "trace_221_p3": str(trace.poly()),
    }


def test_renderings_match_golden_file():
    expected = {}
    for line in GOLDEN.read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        key, rendered = line.split("|", 1)
        expected[key] = rendered
    assert current_renderings() == expected
