"""Command-line entry point: ``felsowen analyze|sweep|axioms|selftest``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import CapacityError, DomainError, InvariantError, ParseError
from .voting_body import (
    BACKEND_CHOICES,
    DEFAULT_SWEEP,
    INDEX_CHOICES,
    analyze,
    load_body,
    parse_quota,
    sweep,
    sweep_csv,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CAPACITY = 3
EXIT_INVARIANT = 4

log = logging.getLogger("felsowen")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _quota_list(values: list[str] | None):
    if not values:
        return list(DEFAULT_SWEEP)
    out = []
    for v in values:
        out.extend(parse_quota(x) for x in v.split(",") if x.strip())
    return out


def cmd_analyze(args) -> int:
    body = load_body(args.input)
    quota = parse_quota(args.quota) if args.quota is not None else None
    report = analyze(
        body,
        quota,
        index=args.index,
        backend=args.backend,
        top_k=args.top_k,
        inclusive=args.quota_inclusive,
    )
    _emit(report.render(args.format), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    body = load_body(args.input)
    rows = sweep(
        body,
        _quota_list(args.quota),
        index=args.index,
        backend=args.backend,
        inclusive=args.quota_inclusive,
    )
    if args.format == "csv":
        text = sweep_csv(rows)
    else:
        import json

        text = json.dumps([r.as_dict() for _, r in rows], indent=2, ensure_ascii=False) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_axioms(args) -> int:
    from .axioms import independence_matrix

    theorems = (1, 2) if args.theorem == "both" else (int(args.theorem),)
    parts = []
    for th in theorems:
        m = independence_matrix(th, trials=args.trials, seed=args.seed)
        if args.format == "json":
            parts.append(m.to_json())
        elif args.format == "csv":
            parts.append(m.to_csv())
        else:
            parts.append(f"theorem {th}\n{m.render()}\n")
    _emit("\n".join(parts) + ("" if args.format == "text" else "\n"), args.out)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run

    return EXIT_OK if run() else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="felsowen", description="Felsenthal and Felsenthal Owen power indices.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, index_default):
        sp.add_argument("input", help="CSV (id,name,weight,bloc) or explicit-game JSON")
        sp.add_argument("--quota-inclusive", action="store_true", help="round fractional quotas up (q = ceil(f*total))")
        sp.add_argument("--index", choices=INDEX_CHOICES, default=index_default)
        sp.add_argument("--backend", choices=BACKEND_CHOICES, default="auto")
        sp.add_argument("--out", help="write to this file instead of stdout")

    a = sub.add_parser("analyze", help="indices at one quota")
    common(a, "both")
    a.add_argument("--quota", help="absolute integer, or fraction of total weight (0.5, 1/2, 50%%)")
    a.add_argument("--format", choices=("json", "csv", "text"), default="json")
    a.add_argument("--top-k", type=int, default=6)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sweep", help="indices over several quotas (default 0.50 to 1.00 by 0.05)")
    common(s, "felsenthal_owen")
    s.add_argument("--quota", action="append", help="quota or comma-separated quotas; repeatable")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.set_defaults(func=cmd_sweep)

    x = sub.add_parser("axioms", help="independence matrices of the axiom systems")
    x.add_argument("--theorem", choices=("1", "2", "both"), default="both")
    x.add_argument("--trials", type=int, default=500)
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--format", choices=("text", "csv", "json"), default="text")
    x.add_argument("--out")
    x.set_defaults(func=cmd_axioms)

    t = sub.add_parser("selftest", help="check the worked examples")
    t.set_defaults(func=cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ParseError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InvariantError, AssertionError) as exc:
        print(f"internal invariant failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
