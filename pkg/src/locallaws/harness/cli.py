"""Command-line entry point: ``locallaws <subcommand> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from ..errors import BudgetError, DomainError
from ..laws import (LAW_IDS, LawParams, bridge15, envelope19, predict_et21, predict_phi43,
                    predict_thm11, predict_thm13, predict_ur42)
from ..sieve import nu_histogram, phi_legendre, s_z_from_hist
from ..specfun import buchstab_omega, dickman_rho, rho_r, sigma_r
from .cache import format_histogram, write_atomic
from .config import parse_config
from .experiment import emit_metadata, emit_report, run_experiment

log = logging.getLogger("locallaws")

EXIT_DOMAIN = 2
EXIT_BUDGET = 3


def _cmd_sieve(args) -> None:
    h = nu_histogram(args.x, args.y, workers=args.workers)
    text = format_histogram(h)
    if args.out:
        write_atomic(Path(args.out), text)
    else:
        sys.stdout.write(text)


def _cmd_specfun(args) -> None:
    if args.fn in ("rho_r", "sigma_r") and args.r is None:
        raise DomainError(f"--r is required for {args.fn}")
    value = {
        "rho": lambda: dickman_rho(args.u),
        "omega": lambda: buchstab_omega(args.u),
        "rho_r": lambda: rho_r(args.r, args.u),
        "sigma_r": lambda: sigma_r(args.r, args.u),
    }[args.fn]()
    print(repr(float(value)))


def _cmd_predict(args) -> None:
    p = LawParams(args.x, args.y, args.k)
    law = args.law
    if law == "thm11":
        value = predict_thm11(p)
    elif law == "et21":
        value = predict_et21(p)
    elif law == "thm13":
        value = predict_thm13(p)
    elif law == "envelope19":
        value = envelope19(p)
    elif law == "phi43":
        value = predict_phi43(p)
    elif law == "u_r42":
        value = predict_ur42(p, args.r if args.r is not None else p.r)
    else:
        # bridge15 needs the exact generating sum S_r(x, y)
        h = nu_histogram(args.x, args.y, workers=args.workers)
        value = bridge15(p, s_z_from_hist(h, p.r))
    print(repr(float(value)))


def _cmd_experiment(args) -> None:
    cfg = parse_config(Path(args.config).read_text())
    if args.format:
        cfg.format = args.format
    if args.workers is not None:
        cfg.workers = args.workers
    rep = run_experiment(cfg)
    out = Path(args.out)
    write_atomic(out, emit_report(rep, cfg.format))
    write_atomic(out.with_name(out.name + ".meta.json"), emit_metadata(rep))
    log.info("wrote %d rows to %s", len(rep.rows), out)


def _cmd_phi(args) -> None:
    print(phi_legendre(args.x, args.y))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="locallaws", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="histogram of nu(n, y) over n <= x")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=_cmd_sieve)

    p = sub.add_parser("specfun", help="evaluate rho, omega, rho_r or sigma_r")
    p.add_argument("--fn", choices=["rho", "omega", "rho_r", "sigma_r"], required=True)
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--r", type=float)
    p.set_defaults(func=_cmd_specfun)

    p = sub.add_parser("predict", help="main term of one law at (x, y, k)")
    p.add_argument("--law", choices=LAW_IDS, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=float, help="u_r42 only; default k / log log y")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("experiment", help="run a config grid and write a report")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["csv", "markdown"])
    p.add_argument("--workers", type=int)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("phi", help="Phi(x, y) by the Legendre recursion")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.set_defaults(func=_cmd_phi)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (BudgetError, MemoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    return 0


if __name__ == "__main__":
    sys.exit(main())
