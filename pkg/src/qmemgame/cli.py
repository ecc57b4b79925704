"""Command-line interface.

Subcommands: ``payoff``, ``sweep``, ``best-response``, ``case-study`` and
``validate``. Exit codes: 0 success, 1 a validation or claim check failed,
2 bad arguments or configuration.

Scenario files hold ``key = value`` lines; ``#`` starts a comment. Angles are
radians unless ``--degrees`` is given. Recognised keys::

    game                      builtin name, or a label for a custom game
    gamma delta               entanglement / measurement angles in [0, pi/2]
    p mu                      shorthand setting both trips
    p1 mu1 p2 mu2             per-trip dephasing probability and memory
    theta1 alpha1 beta1       Alice's strategy
    theta2 alpha2 beta2       Bob's strategy
    payoff_a_ij payoff_b_ij   custom payoff entries, i, j in {0, 1}
    cross_phase               +1 (default) or -1, sign in |psi_01>, |psi_10>

Payoff records are written with the columns in :data:`RECORD_FIELDS`.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict
from typing import Dict, List, Optional, Sequence

from .analysis import GridSpec, best_response, sweep
from .cases import case_study
from .channels import DephasingParams
from .games import BUILTIN_GAMES, Game2x2, StrategyParams, builtin_game
from .protocol import GameConfig, closed_form_payoffs, simulate_protocol
from .validation import EQUIVALENCE_TOL, structural_invariants, validate_equivalence

ANGLE_KEYS = {"gamma", "delta", "theta1", "alpha1", "beta1", "theta2", "alpha2", "beta2"}
PAYOFF_KEYS = {f"payoff_{who}_{i}{j}" for who in "ab" for i in "01" for j in "01"}
NUMERIC_KEYS = ANGLE_KEYS | PAYOFF_KEYS | {"p", "mu", "p1", "mu1", "p2", "mu2", "cross_phase"}
SCENARIO_KEYS = NUMERIC_KEYS | {"game"}

RECORD_FIELDS = ["game", "gamma", "delta", "p1", "mu1", "p2", "mu2",
                 "theta1", "alpha1", "beta1", "theta2", "alpha2", "beta2",
                 "payoff_alice", "payoff_bob", "advantage"]
SWEEP_FIELDS = ["param", "payoff_alice", "payoff_bob", "advantage"]
RESPONSE_FIELDS = ["responder", "theta", "alpha", "beta", "payoff",
                   "payoff_alice", "payoff_bob", "advantage"]

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


class ScenarioError(ValueError):
    """Malformed scenario file or override."""


def fmt(x) -> str:
    """Shortest text that round-trips the float exactly (up to 17 digits)."""
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return "true" if x else "false"
    return repr(float(x))


def parse_scenario_text(text: str, source: str = "<scenario>") -> Dict[str, str]:
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in SCENARIO_KEYS:
            raise ScenarioError(f"{source}:{lineno}: unknown key {key!r}")
        if not value:
            raise ScenarioError(f"{source}:{lineno}: empty value for {key!r}")
        values[key] = value
    return values


def build_scenario(values: Dict[str, str], degrees: bool = False):
    """Turn raw key/value strings into ``(GameConfig, alice, bob)``."""
    nums: Dict[str, float] = {}
    for key, raw in values.items():
        if key == "game":
            continue
        try:
            v = float(raw)
        except ValueError:
            raise ScenarioError(f"{key} must be a number, got {raw!r}") from None
        if not math.isfinite(v):
            raise ScenarioError(f"{key} must be finite, got {raw!r}")
        if degrees and key in ANGLE_KEYS:
            v = math.radians(v)
        nums[key] = v

    payoffs = PAYOFF_KEYS & nums.keys()
    name = values.get("game", "prisoners-dilemma" if not payoffs else "custom")
    if payoffs:
        missing = sorted(PAYOFF_KEYS - payoffs)
        if missing:
            raise ScenarioError(f"custom game is missing {', '.join(missing)}")
        tab = {w: tuple(tuple(nums[f"payoff_{w}_{i}{j}"] for j in "01") for i in "01") for w in "ab"}
        game = Game2x2(name, tab["a"], tab["b"])
    else:
        try:
            game = builtin_game(name)
        except KeyError as exc:
            raise ScenarioError(exc.args[0]) from None

    p, mu = nums.get("p", 0.0), nums.get("mu", 0.0)
    try:
        cfg = GameConfig(
            gamma=nums.get("gamma", 0.0),
            delta=nums.get("delta", 0.0),
            trip1=DephasingParams(nums.get("p1", p), nums.get("mu1", mu)),
            trip2=DephasingParams(nums.get("p2", p), nums.get("mu2", mu)),
            game=game,
            cross_phase=int(nums.get("cross_phase", 1)),
        )
        alice = StrategyParams(nums.get("theta1", 0.0), nums.get("alpha1", 0.0), nums.get("beta1", 0.0))
        bob = StrategyParams(nums.get("theta2", 0.0), nums.get("alpha2", 0.0), nums.get("beta2", 0.0))
    except ValueError as exc:
        raise ScenarioError(str(exc)) from None
    return cfg, alice, bob


def load_scenario(args) -> tuple:
    values: Dict[str, str] = {}
    if args.scenario:
        try:
            with open(args.scenario, encoding="utf-8") as fh:
                values.update(parse_scenario_text(fh.read(), args.scenario))
        except OSError as exc:
            raise ScenarioError(f"cannot read scenario: {exc}") from None
    for item in args.set or []:
        values.update(parse_scenario_text(item, "--set"))
    return build_scenario(values, args.degrees)


def result_record(cfg: GameConfig, alice: StrategyParams, bob: StrategyParams, pay) -> dict:
    return {
        "game": cfg.game.name, "gamma": cfg.gamma, "delta": cfg.delta,
        "p1": cfg.trip1.p, "mu1": cfg.trip1.mu, "p2": cfg.trip2.p, "mu2": cfg.trip2.mu,
        "theta1": alice.theta, "alpha1": alice.alpha, "beta1": alice.beta,
        "theta2": bob.theta, "alpha2": bob.alpha, "beta2": bob.beta,
        "payoff_alice": pay.alice, "payoff_bob": pay.bob, "advantage": pay.advantage,
    }


def render(rows: List[dict], fields: Sequence[str], fmt_name: str) -> str:
    if fmt_name == "json":
        out = [{k: (r[k] if isinstance(r[k], str) else float(r[k])) for k in fields} for r in rows]
        return json.dumps(out[0] if len(out) == 1 else out, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for r in rows:
        w.writerow([fmt(r[k]) for k in fields])
    return buf.getvalue()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _grid(args) -> GridSpec:
    try:
        return GridSpec(args.theta_steps, args.alpha_steps, args.beta_steps,
                        args.refine_rounds, args.refine_shrink)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from None


def cmd_payoff(args) -> int:
    cfg, alice, bob = load_scenario(args)
    method = simulate_protocol if args.method == "simulate" else closed_form_payoffs
    pay = method(cfg, alice, bob)
    _emit(render([result_record(cfg, alice, bob, pay)], RECORD_FIELDS, args.format), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg, alice, bob = load_scenario(args)
    start, stop = args.start, args.stop
    if args.degrees and args.param in ("gamma", "delta"):
        start = None if start is None else math.radians(start)
        stop = None if stop is None else math.radians(stop)
    try:
        rows = sweep(cfg, alice, bob, args.param, args.points, start, stop)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from None
    data = [{"param": r.value, "payoff_alice": r.payoff_alice, "payoff_bob": r.payoff_bob,
             "advantage": r.advantage} for r in rows]
    text = render(data, SWEEP_FIELDS, args.format)
    if args.format == "json" and len(data) == 1:
        text = json.dumps([json.loads(text)], indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_best_response(args) -> int:
    cfg, alice, bob = load_scenario(args)
    opponent = bob if args.responder == "alice" else alice
    strat, value = best_response(cfg, opponent, args.responder, _grid(args), args.classical)
    s1, s2 = (strat, bob) if args.responder == "alice" else (alice, strat)
    pay = closed_form_payoffs(cfg, s1, s2)
    row = {"responder": args.responder, "theta": strat.theta, "alpha": strat.alpha,
           "beta": strat.beta, "payoff": value, "payoff_alice": pay.alice,
           "payoff_bob": pay.bob, "advantage": pay.advantage}
    _emit(render([row], RESPONSE_FIELDS, args.format), args.out)
    return EXIT_OK


def cmd_case_study(args) -> int:
    if args.scenario or args.set:
        cfg, _, _ = load_scenario(args)
        game = cfg.game
    else:
        game = builtin_game(args.game)
    report = case_study(args.case, game, _grid(args), seed=args.seed)
    if args.format == "json":
        text = json.dumps(report.to_dict(), indent=2) + "\n"
    elif args.format == "csv":
        rows = [{"claim": c.name, "status": ("info" if c.informational else
                                             "pass" if c.passed else "fail"), "detail": c.detail}
                for c in report.claims]
        text = render(rows, ["claim", "status", "detail"], "csv")
    else:
        text = report.format_text() + "\n"
    _emit(text, args.out)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_validate(args) -> int:
    try:
        eq = validate_equivalence(args.draws, args.seed)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from None
    inv = structural_invariants(max(args.draws // 10, 50), args.seed)
    ok = eq.passed and all(r.passed for r in inv)
    if args.format == "json":
        text = json.dumps({"equivalence": asdict(eq) | {"passed": eq.passed,
                                                        "tolerance": EQUIVALENCE_TOL},
                           "invariants": [asdict(r) for r in inv], "passed": ok}, indent=2) + "\n"
    elif args.format == "csv":
        rows = [{"check": "oracle_equivalence", "passed": eq.passed,
                 "max_error": eq.max_deviation, "tolerance": EQUIVALENCE_TOL}]
        rows += [{"check": r.name, "passed": r.passed, "max_error": r.max_error,
                  "tolerance": r.tolerance} for r in inv]
        text = render(rows, ["check", "passed", "max_error", "tolerance"], "csv")
    else:
        lines = [f"oracle equivalence: draws={eq.draws} seed={eq.seed}",
                 f"  max |closed form - simulation| = {eq.max_deviation:.6e} "
                 f"(tolerance {EQUIVALENCE_TOL:.0e}) {'PASS' if eq.passed else 'FAIL'}",
                 f"  mean deviation = {eq.mean_deviation:.6e}",
                 "  worst case: " + ", ".join(f"{k}={fmt(v)}" for k, v in eq.worst.items())]
        for r in inv:
            lines.append(f"{r.name}: max error {r.max_error:.3e} "
                         f"(tolerance {r.tolerance:.0e}) {'PASS' if r.passed else 'FAIL'}")
        lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _common(p: argparse.ArgumentParser, default_format: str, formats=("csv", "json")) -> None:
    p.add_argument("--scenario", metavar="PATH", help="scenario file with key = value lines")
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="override one scenario key (repeatable)")
    p.add_argument("--degrees", action="store_true", help="read angles in degrees")
    p.add_argument("--format", choices=formats, default=default_format)
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")


def _grid_options(p: argparse.ArgumentParser) -> None:
    d = GridSpec()
    p.add_argument("--theta-steps", type=int, default=d.theta_steps)
    p.add_argument("--alpha-steps", type=int, default=d.alpha_steps)
    p.add_argument("--beta-steps", type=int, default=d.beta_steps)
    p.add_argument("--refine-rounds", type=int, default=d.refine_rounds)
    p.add_argument("--refine-shrink", type=float, default=d.refine_shrink)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmemgame", description="Quantum 2x2 games through correlated dephasing channels."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("payoff", help="payoffs for one scenario")
    _common(p, "csv")
    p.add_argument("--method", choices=("closed-form", "simulate"), default="closed-form")
    p.set_defaults(func=cmd_payoff)

    p = sub.add_parser("sweep", help="payoffs along one parameter")
    _common(p, "csv")
    p.add_argument("--param", choices=("p", "mu", "gamma", "delta"), required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("best-response", help="grid search for a best response")
    _common(p, "csv")
    _grid_options(p)
    p.add_argument("--responder", choices=("alice", "bob"), required=True)
    p.add_argument("--classical", action="store_true", help="restrict responder to alpha = beta = 0")
    p.set_defaults(func=cmd_best_response)

    p = sub.add_parser("case-study", help="check one of the four (gamma, delta) regimes")
    _common(p, "text", ("text", "csv", "json"))
    _grid_options(p)
    p.add_argument("--case", choices=("i", "ii", "iii", "iv"), required=True)
    p.add_argument("--game", choices=sorted(BUILTIN_GAMES), default="prisoners-dilemma")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_case_study)

    p = sub.add_parser("validate", help="closed form vs simulation, plus structural invariants")
    p.add_argument("--draws", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_validate)
    return parser


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"qmemgame: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
