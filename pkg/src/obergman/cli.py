"""Command line runner: ``verify <scenario> [options]``.

Exit codes: 0 when every entry passes, 1 on any failing entry, 2 on a
configuration error (unknown scenario, bad flags, unwritable output
path).  The seed can also come from the OBERGMAN_SEED environment
variable; an explicit --seed flag wins.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from .report import SCENARIO_NAMES, ConfigError, ScenarioConfig, emit_report
from .scenarios import run_scenario

_EPILOG = """\
scenarios:
  algebra              identity checks for the multiplication tables
  analyticity          stencil left-analyticity and harmonicity checks
  kernel-consistency   closed-form kernel identities (exact, 1e-12)
  cauchy-formula       sphere Cauchy integral reproduction
  reproduce-halfspace  half-space reproducing formula, m in {2,4,8}
  reproduce-ball       weighted unit-ball reproducing checks (m=8)
  limit-lemma          ball kernels converging to the half-space kernel
  density              L2 shift convergence of catalog members
  complex-oracle       m=2 kernel against the classical half-plane kernel
  all                  every scenario above, in that order

--tol overrides the scenario's primary gate (limit-lemma: the final-error
gate).  --samples sets the quadrature budget (stochastic scenarios) or
trial count (exact suites).  OBERGMAN_SEED provides a default seed.
"""


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="verify",
        description="Numerically certify the Bergman kernel identities.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("scenario", choices=SCENARIO_NAMES)
    p.add_argument("--dim", type=int, choices=(2, 4, 8), default=None)
    p.add_argument("--samples", type=int, default=None, metavar="N")
    p.add_argument("--seed", type=int, default=None, metavar="S")
    p.add_argument("--radius", type=float, default=None, metavar="R",
                   help="half-space truncation radius override")
    p.add_argument("--tol", type=float, default=None, metavar="T")
    p.add_argument("--out", type=str, default=None, metavar="PATH")
    p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    return p


def _seed_from_env() -> Optional[int]:
    raw = os.environ.get("OBERGMAN_SEED")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"OBERGMAN_SEED must be an integer, got {raw!r}") from exc


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        seed = args.seed if args.seed is not None else _seed_from_env()
        cfg = ScenarioConfig(
            scenario=args.scenario,
            dim=args.dim,
            seed=42 if seed is None else seed,
            samples=args.samples,
            tolerance=args.tol,
            radius=args.radius,
            out=args.out,
            fmt=args.fmt,
        )
        report = run_scenario(cfg)
        text = emit_report(report, cfg.fmt, cfg.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot write report: {exc}", file=sys.stderr)
        return 2

    for e in report.entries:
        status = "PASS" if e.passed else "FAIL"
        print(f"{status} {e.name}", file=sys.stderr)
    print(
        f"{report.passed}/{report.total} checks passed", file=sys.stderr
    )
    if cfg.out is None:
        sys.stdout.write(text)
    return 0 if report.all_passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
