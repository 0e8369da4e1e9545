"""Command-line front end.

Exit codes: 0 when every requested verification passes, 1 on a verification
failure, 2 on usage or domain errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .claims import CLAIMS, run_all, run_claim
from .errors import DomainError
from .matrices import KINDS, build_matrix, export_matrix
from .numtheory import phi_tilde, totient_summary
from .spectral import large_sieve_identity, spectrum
from .sums import kloosterman, ramanujan

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    kind: Optional[str] = None
    q: Optional[int] = None
    Q: Optional[int] = None
    m: Optional[int] = None
    n: Optional[int] = None
    param: Optional[int] = None
    fmt: str = "text"
    out: Optional[Path] = None
    seed: Optional[int] = None
    exact: bool = False


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        out.write_text(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ramanujan-spectra", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_sum = sub.add_parser("sum", help="evaluate a single exponential sum")
    sum_sub = p_sum.add_subparsers(dest="which", required=True)
    p_ram = sum_sub.add_parser("ramanujan", help="c_q(n)")
    p_ram.add_argument("--q", type=int, required=True)
    p_ram.add_argument("--n", type=int, required=True)
    p_ram.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    p_kl = sum_sub.add_parser("kloosterman", help="S(m, n; q)")
    p_kl.add_argument("--q", type=int, required=True)
    p_kl.add_argument("--m", type=int, required=True)
    p_kl.add_argument("--n", type=int, required=True)
    p_kl.add_argument("--exact", action="store_true", help="also print the Z[zeta_q] coefficients")
    p_kl.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")

    p_pt = sub.add_parser("phitilde", help="count of square roots of -1 among units")
    grp = p_pt.add_mutually_exclusive_group(required=True)
    grp.add_argument("--q", type=int)
    grp.add_argument("--table", action="store_true", help="CSV rows q,phi,phi_tilde,tau")
    p_pt.add_argument("--upto", type=int, default=None)
    p_pt.add_argument("--out", type=Path)

    p_mat = sub.add_parser("matrix", help="build and export a matrix")
    p_mat.add_argument("--kind", choices=KINDS, required=True)
    p_mat.add_argument("--param", type=int, required=True)
    p_mat.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    p_mat.add_argument("--exact", action="store_true", help="JSON only: include coefficient vectors")
    p_mat.add_argument("--out", type=Path)

    p_spec = sub.add_parser("spectrum", help="derive eigenvalue multiplicities")
    p_spec.add_argument("--kind", choices=KINDS, required=True)
    p_spec.add_argument("--param", type=int, required=True)
    p_spec.add_argument("--out", type=Path)

    p_ver = sub.add_parser("verify", help="run verification claims")
    mode = p_ver.add_mutually_exclusive_group(required=True)
    mode.add_argument("--claim", choices=sorted(CLAIMS))
    mode.add_argument("--all", action="store_true")
    p_ver.add_argument("--param", type=int)
    p_ver.add_argument("--max-q", dest="max_q", type=int, default=64)
    p_ver.add_argument("--max-Q", dest="max_Q", type=int, default=6)
    p_ver.add_argument("--out", type=Path)

    p_demo = sub.add_parser("demo", help="demonstrations")
    demo_sub = p_demo.add_subparsers(dest="which", required=True)
    p_ls = demo_sub.add_parser("large-sieve", help="exponential sums vs quadratic form")
    p_ls.add_argument("--Q", dest="Q", type=int, required=True)
    p_ls.add_argument("--seed", type=int, default=None)
    p_ls.add_argument("--out", type=Path)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        kind=getattr(args, "kind", None),
        q=getattr(args, "q", None),
        Q=getattr(args, "Q", None),
        m=getattr(args, "m", None),
        n=getattr(args, "n", None),
        param=getattr(args, "param", None),
        fmt=getattr(args, "fmt", "json"),
        out=getattr(args, "out", None),
        seed=getattr(args, "seed", None),
        exact=getattr(args, "exact", False),
    )


def _cmd_sum(args, cfg: RunConfig) -> int:
    if args.which == "ramanujan":
        value = ramanujan(cfg.q, cfg.n)
        text = json.dumps({"q": cfg.q, "n": cfg.n, "value": value}) if cfg.fmt == "json" else str(value)
    else:
        kv = kloosterman(cfg.q, cfg.m, cfg.n)
        doc = {"q": kv.q, "m": kv.m, "n": kv.n, "value": kv.approx}
        if cfg.exact:
            doc["coeffs"] = list(kv.exact.coeffs)
        if cfg.fmt == "json":
            text = json.dumps(doc)
        else:
            text = f"{kv.approx:.12g}"
            if cfg.exact:
                text += "\n" + " ".join(str(c) for c in kv.exact.coeffs)
    _emit(text, None)
    return EXIT_OK


def _cmd_phitilde(args, cfg: RunConfig) -> int:
    if args.table:
        if args.upto is None or args.upto < 1:
            raise DomainError("--table needs --upto N with N >= 1")
        lines = ["q,phi,phi_tilde,tau"]
        for q in range(1, args.upto + 1):
            s = totient_summary(q)
            lines.append(f"{s.q},{s.phi},{s.phi_tilde},{s.tau}")
        _emit("\n".join(lines) + "\n", cfg.out)
    else:
        _emit(str(phi_tilde(args.q)), cfg.out)
    return EXIT_OK


def _cmd_matrix(args, cfg: RunConfig) -> int:
    matrix = build_matrix(cfg.kind, cfg.param)
    data = export_matrix(matrix, cfg.fmt, exact=cfg.exact)
    if cfg.out is None:
        sys.stdout.write(data.decode())
        if cfg.fmt == "json":
            sys.stdout.write("\n")
    else:
        cfg.out.write_bytes(data)
    return EXIT_OK


def _cmd_spectrum(args, cfg: RunConfig) -> int:
    report = spectrum(cfg.kind, cfg.param)
    _emit(json.dumps(report.to_json()), cfg.out)
    return EXIT_OK


def _cmd_verify(args, cfg: RunConfig) -> int:
    if args.all:
        reports = run_all(args.max_q, args.max_Q)
    else:
        reports = [run_claim(args.claim, cfg.param)]
    _emit(json.dumps([r.to_json() for r in reports], indent=1), cfg.out)
    for r in reports:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.claim} {json.dumps(r.params, sort_keys=True)}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _cmd_demo(args, cfg: RunConfig) -> int:
    report = large_sieve_identity(cfg.Q, seed=cfg.seed)
    _emit(json.dumps(report.to_json(), indent=1), cfg.out)
    return EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {
    "sum": _cmd_sum,
    "phitilde": _cmd_phitilde,
    "matrix": _cmd_matrix,
    "spectrum": _cmd_spectrum,
    "verify": _cmd_verify,
    "demo": _cmd_demo,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    cfg = _config(args)
    try:
        return COMMANDS[cfg.command](args, cfg)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
