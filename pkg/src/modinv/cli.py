"""Command-line front end; a thin client of the service endpoints.

Requests run against the in-process app unless --server points at a
deployed instance.  Exit codes: 0 success, 1 usage or resource errors,
2 verification failure (a check or report came back not ok).
"""

from __future__ import annotations

import argparse
import json
import sys

from .client import ServiceClient

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2


def _parse_multidegree(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")
    if not values or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError("multidegree needs non-negative entries, e.g. 1,1,1,2")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modinv",
        description=(
            "Modular vector invariants of C_p and SL2(F_p) on copies of the plane: "
            "counting tables, decompositions, generating-set checks."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", help="base URL of a running service; default in-process")
    common.add_argument(
        "--format", choices=["json", "table"], default="table", help="output format"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    counts = sub.add_parser("counts", help="summand/path counting tables", parents=[common])
    counts.add_argument("--p", type=int, required=True)
    counts.add_argument("--dmax", type=int, required=True)

    pathscmd = sub.add_parser("paths", help="admissible lattice paths of one length", parents=[common])
    pathscmd.add_argument("--p", type=int, required=True)
    pathscmd.add_argument("--d", type=int, required=True)

    tensor = sub.add_parser("tensor", help="decompose the d-fold tensor power of the plane", parents=[common])
    tensor.add_argument("--p", type=int, required=True)
    tensor.add_argument("--d", type=int, required=True)

    dec = sub.add_parser("decompose", help="decompose a graded component into indecomposables", parents=[common])
    dec.add_argument("--p", type=int, required=True)
    dec.add_argument("--multidegree", type=_parse_multidegree, required=True)
    dec.add_argument("--method", choices=["rank", "paths"], default="rank")

    sag = sub.add_parser("sagbi", help="verify generator leads across small components", parents=[common])
    sag.add_argument("--p", type=int, required=True)
    sag.add_argument("--m", type=int, required=True)
    sag.add_argument("--max-degree", type=int, required=True, dest="max_degree")
    sag.add_argument("--variant", choices=["minimal", "full"], default="minimal")
    sag.add_argument("--jobs", type=int, default=1)

    sl2cmd = sub.add_parser("sl2", help="count minimal generators of the SL2 invariants", parents=[common])
    sl2cmd.add_argument("--p", type=int, required=True)
    sl2cmd.add_argument("--m", type=int, required=True)
    sl2cmd.add_argument("--dmax", type=int, required=True)
    sl2cmd.add_argument(
        "--budget", type=float, default=None, help="seconds; default MODINV_BUDGET_SECS"
    )

    selftest = sub.add_parser("selftest", help="run the built-in oracle checks", parents=[common])
    selftest.add_argument("--level", choices=["quick", "full"], default="quick")
    selftest.add_argument("--jobs", type=int, default=1)
    selftest.add_argument("--seed", type=int, default=0)

    return parser


def _request_body(args: argparse.Namespace) -> tuple[str, dict]:
    sub = args.subcommand
    if sub == "counts":
        return "/v1/counts", {"p": args.p, "dmax": args.dmax}
    if sub == "paths":
        return "/v1/paths", {"p": args.p, "d": args.d}
    if sub == "tensor":
        return "/v1/tensor", {"p": args.p, "d": args.d}
    if sub == "decompose":
        return "/v1/decompose", {
            "p": args.p,
            "multidegree": args.multidegree,
            "method": args.method,
        }
    if sub == "sagbi":
        return "/v1/sagbi", {
            "p": args.p,
            "m": args.m,
            "max_total_degree": args.max_degree,
            "variant": args.variant,
            "jobs": args.jobs,
        }
    if sub == "sl2":
        body = {"p": args.p, "m": args.m, "dmax": args.dmax}
        if args.budget is not None:
            body["budget_secs"] = args.budget
        return "/v1/sl2", body
    if sub == "selftest":
        return "/v1/selftest", {"level": args.level, "jobs": args.jobs, "seed": args.seed}
    raise AssertionError(f"unhandled subcommand {sub}")


# ---------- table renderers ----------


def _render_counts(data: dict) -> str:
    p = data["p"]
    lines = [f"counting tables mod p={p}, d <= {data['dmax']}"]
    mu_header = " ".join(f"mu({h})" for h in range(1, p + 1))
    nu_header = " ".join(f"nu({h})" for h in range(0, p - 1))
    lines.append(f"{'d':>3} | {mu_header} | {nu_header} | nu_bar")
    for d, (mu_row, nu_row) in enumerate(zip(data["mu"], data["nu"])):
        mu_cells = " ".join(f"{mu_row[h]:>5}" for h in range(1, p + 1))
        nu_cells = " ".join(f"{nu_row[h]:>5}" for h in range(0, p - 1))
        lines.append(f"{d:>3} | {mu_cells} | {nu_cells} | {data['nu_bar'][d]}")
    return "\n".join(lines)


def _render_paths(data: dict) -> str:
    lines = [
        f"admissible paths of length {data['d']} mod p={data['p']}: "
        f"{data['pdp_count']} partial, {data['idp_count']} initial"
    ]
    for entry in data["paths"]:
        word = entry["word"] or "(empty)"
        if entry["class"] == "pdp":
            lines.append(
                f"  {word:<{max(1, data['d'])}}  pdp  height {entry['finishing_height']}"
                f"  -> V{entry['summand_dimension']}"
            )
        else:
            lines.append(
                f"  {word:<{max(1, data['d'])}}  idp            -> V{entry['summand_dimension']}"
            )
    return "\n".join(lines)


def _summands_line(summands: dict) -> str:
    return " + ".join(
        (f"{count}V{dim}" if count > 1 else f"V{dim}") for dim, count in sorted(
            ((int(k), v) for k, v in summands.items())
        )
    )


def _render_tensor(data: dict) -> str:
    return (
        f"tensor power d={data['d']} mod p={data['p']}: {_summands_line(data['summands'])} "
        f"(dimension {data['total_dimension']}, {data['summand_count']} summands)"
    )


def _render_decompose(data: dict) -> str:
    lam = ",".join(map(str, data["multidegree"]))
    return f"component ({lam}) mod p={data['p']}: {_summands_line(data['summands'])}"


def _render_sagbi(data: dict) -> str:
    lines = [
        f"sagbi check mod p={data['p']}, m={data['m']}, variant={data['variant']}: "
        f"{data['invariants_checked']} invariant leads across "
        f"{data['components_checked']} components, {data['generator_count']} generators"
    ]
    if data["ok"]:
        lines.append("all leads factor over the generator leads")
    else:
        for failure in data["failures"]:
            lam = ",".join(map(str, failure["multidegree"]))
            lines.append(f"  FAIL ({lam}): {failure['lead']}")
    return "\n".join(lines)


def _render_sl2(data: dict) -> str:
    lines = [
        f"SL2 invariants mod p={data['p']}, m={data['m']}, degrees <= {data['dmax']}:"
    ]
    for degree, count in sorted((int(k), v) for k, v in data["per_degree"].items()):
        lines.append(f"  degree {degree:>2}: {count} new generators")
    lines.append(
        f"total {data['total_generators']}; Noether number {data['noether_number']} "
        f"(bound {data['noether_bound']}); polarized family size {data['s_m_size']}"
    )
    return "\n".join(lines)


def _render_selftest(data: dict) -> str:
    lines = []
    for check in data["checks"]:
        mark = "PASS" if check["ok"] else "FAIL"
        lines.append(f"{mark} {check['name']}: {check['detail']}")
    lines.append(f"{data['passed']} passed, {data['failed']} failed ({data['level']} level)")
    return "\n".join(lines)


RENDERERS = {
    "counts": _render_counts,
    "paths": _render_paths,
    "tensor": _render_tensor,
    "decompose": _render_decompose,
    "sagbi": _render_sagbi,
    "sl2": _render_sl2,
    "selftest": _render_selftest,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if not exc.code else EXIT_USAGE

    path, body = _request_body(args)
    client = ServiceClient(args.server)
    try:
        status, data = client.post(path, body)
    except Exception as exc:  # connection problems and the like
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if status == 422:
        print(f"invalid request: {json.dumps(data.get('detail', data))}", file=sys.stderr)
        return EXIT_USAGE
    if status != 200:
        detail = data.get("detail", data) if isinstance(data, dict) else data
        print(f"error ({status}): {detail}", file=sys.stderr)
        return EXIT_USAGE

    if args.format == "json":
        print(json.dumps(data, separators=(",", ":")))
    else:
        print(RENDERERS[args.subcommand](data))

    if isinstance(data, dict) and data.get("ok") is False:
        return EXIT_VERIFICATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
