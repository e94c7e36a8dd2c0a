"""Command line entry points: ``validate``, ``simulate`` and ``serve``.

``simulate`` is the headless harness used for batch Monte Carlo sweeps; it
prints tab-separated values so runs can be diffed and piped.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import market, policies
from .content import default_pack, load_pack, parse_pack, validate_pack
from .errors import GameError, ParseError, ValidationError
from .market import VentureConfig


def _load_pack_arg(path: str | None):
    if path is None:
        return default_pack()
    return load_pack(Path(path).read_bytes())


def cmd_validate(args) -> int:
    """Exit 0 iff the pack is valid; diagnostics printed one per line."""
    try:
        source = Path(args.pack_file).read_bytes()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        load_pack(source)
    except ValidationError as exc:
        for d in exc.report.diagnostics:
            print(f"{d.severity.upper()} {d.path}: {d.message}")
        return 1
    except ParseError as exc:
        print(f"ERROR $: {exc.message}")
        return 1
    print("OK")
    return 0


def _parse_sweep(spec: str) -> list[float]:
    try:
        start, stop, step = (float(x) for x in spec.split(":"))
    except ValueError:
        raise GameError(f"bad sweep spec '{spec}'; expected start:stop:step") from None
    if step <= 0:
        raise GameError("sweep step must be > 0")
    values = []
    v = start
    while v <= stop + 1e-9:
        values.append(round(v, 10))
        v += step
    return values


def cmd_simulate(args) -> int:
    config = VentureConfig(horizon=args.turns) if args.turns else VentureConfig()

    if args.sweep_learning:
        values = _parse_sweep(args.sweep_learning)
        rows = policies.sweep_learning(config, args.policy, values, args.trials, args.seed)
        print("learning_score\tsuccess_rate")
        for learning, rate in rows:
            print(f"{learning:g}\t{rate:.4f}")
        return 0

    decisions = policies.get_policy(args.policy)(config, args.learning_score, config.horizon)
    state = market.initial_state(config, args.learning_score, args.seed)
    outcome = market.run_horizon(state, decisions, config)
    header = [
        "turn",
        "demand_units",
        "units_sold",
        "sales",
        "cogs",
        "gross_margin",
        "sga",
        "ebitda",
        "depreciation",
        "ebit",
        "interest",
        "income_before_taxes",
        "taxes",
        "net_income",
        "cash",
        "equity",
    ]
    print("\t".join(header))
    for t in outcome.turns:
        p = t.pnl
        row = [
            t.turn,
            f"{t.demand_units:.6f}",
            t.units_sold,
            f"{p.sales:.2f}",
            f"{p.cogs:.2f}",
            f"{p.gross_margin:.2f}",
            f"{p.sga:.2f}",
            f"{p.ebitda:.2f}",
            f"{p.depreciation:.2f}",
            f"{p.ebit:.2f}",
            f"{p.interest:.2f}",
            f"{p.income_before_taxes:.2f}",
            f"{p.taxes:.2f}",
            f"{p.net_income:.2f}",
            f"{t.balance.cash:.2f}",
            f"{t.balance.equity:.2f}",
        ]
        print("\t".join(str(x) for x in row))
    print(
        f"outcome\tsuccess={str(outcome.success).lower()}\tscore={outcome.score}"
        f"\tbankrupt={str(outcome.final_state.bankrupt).lower()}"
    )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    from .store import Store

    pack = _load_pack_arg(args.pack)
    store = Store(args.state_dir)
    app = create_app(pack, store, base_seed=args.seed)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="venturetower")
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="validate a content pack file")
    p_validate.add_argument("pack_file")
    p_validate.set_defaults(func=cmd_validate)

    p_sim = sub.add_parser("simulate", help="run a headless market simulation")
    p_sim.add_argument("--pack", default=None, help="pack file (default: built-in pack)")
    p_sim.add_argument("--learning-score", type=float, default=0.5)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--turns", type=int, default=None)
    p_sim.add_argument("--policy", default="steady", choices=sorted(policies.POLICIES))
    p_sim.add_argument("--sweep-learning", default=None, metavar="START:STOP:STEP")
    p_sim.add_argument("--trials", type=int, default=100)
    p_sim.set_defaults(func=cmd_simulate)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--pack", default=None, help="pack file (default: built-in pack)")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--state-dir", required=True)
    p_serve.add_argument("--seed", type=int, default=0)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GameError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
