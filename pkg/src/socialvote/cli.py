"""Command-line interface: ``socialvote <command> ...``.

Every command writes its result to stdout (or ``--out``). On failure the
process exits nonzero after printing ``{"error": ..., "message": ...}`` to
stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .estimation import fit_r, fit_r_from_events
from .exceptions import SocialVoteError
from .harness import METHODS, evaluate_dataset, r_distribution
from .params import ModelParams, StoryParams
from .prediction import NEVER, predict, promotion_boundary
from .solver import (DEFAULT_HORIZON, DEFAULT_STEP, derive_seeds, ensemble_mean, simulate,
                     solve)
from .synthgen import PopulationSpec, read_dataset, write_dataset


class CLIError(SocialVoteError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _fail("UsageError", message, code=2)


def _fail(kind: str, message: str, code: int = 1):
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    sys.exit(code)


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_params(path) -> ModelParams:
    return ModelParams.default() if path is None else ModelParams.from_json(path)


def parse_story(text: str) -> StoryParams:
    """Parse ``r=0.2,S=100`` into :class:`StoryParams`."""
    values = {}
    for part in text.split(","):
        key, sep, val = part.partition("=")
        if not sep:
            raise CLIError(f"bad story field {part!r}; expected key=value")
        values[key.strip()] = val.strip()
    unknown = set(values) - {"r", "S"}
    if unknown or "r" not in values:
        raise CLIError("story must be given as r=<float>[,S=<int>]")
    return StoryParams(float(values["r"]), int(values.get("S", 0)))


def _is_stream_file(path: Path) -> bool:
    if path.is_dir():
        return True
    with open(path) as fh:
        return fh.readline().lstrip().startswith("{")


# -- commands ---------------------------------------------------------------

def cmd_simulate(args) -> str:
    res = solve(parse_story(args.story), _load_params(args.params), args.horizon, args.step)
    if args.format == "csv":
        return io.trajectory_to_csv(res.trajectory)
    return io.dump_json({
        "story": parse_story(args.story).to_dict(),
        "promoted_at": res.promoted_at,
        "final_votes": res.final_votes,
        "final_fan_pool": res.final_fan_pool,
        "trajectory": [[t, v] for t, v in res.trajectory],
    })


def cmd_mc(args) -> str:
    story = parse_story(args.story)
    params = _load_params(args.params)
    if args.mean:
        return io.trajectory_to_csv(
            ensemble_mean(story, params, args.horizon, args.runs, args.seed))
    seeds = [args.seed] if args.runs == 1 else derive_seeds(args.seed, args.runs)
    return "".join(io.stream_to_jsonl(simulate(story, params, args.horizon, s)) for s in seeds)


def cmd_fit(args) -> str:
    params = _load_params(args.params)
    path = Path(args.obs)
    if path.suffix == ".csv" or not _is_stream_file(path):
        obs = io.read_trajectory(path)
        if args.fans is None:
            raise CLIError("--fans is required for trajectory input")
        if args.first_k is not None:
            obs = obs.head(args.first_k)
        result = fit_r(obs, args.fans, params, args.horizon)
    else:
        stream = io.read_stream(path)
        result = fit_r_from_events(stream, args.first_k, params, args.horizon,
                                   submitter_fans=args.fans)
    return io.dump_json(result.to_dict())


def cmd_predict(args) -> str:
    params = _load_params(args.params)
    path = Path(args.events)
    if _is_stream_file(path):
        histories = io.read_streams(path)
    else:
        histories = [io.read_trajectory(path)]
    lines = []
    for h in histories:
        p = predict(h, args.fans, params, args.horizon, args.first_k)
        lines.append(json.dumps(p.to_dict(), sort_keys=True))
    return "\n".join(lines) + "\n"


def cmd_boundary(args) -> str:
    params = _load_params(args.params)
    rows = ["S,r_min"]
    for tok in args.fans_grid.split(","):
        s = int(tok)
        r_min = promotion_boundary(s, params, args.horizon)
        rows.append(f"{s},{'never' if r_min == NEVER else repr(r_min)}")
    return "\n".join(rows) + "\n"


def cmd_generate(args) -> str:
    spec = PopulationSpec.from_json(args.spec)
    ds = write_dataset(args.out, spec, _load_params(args.params))
    n_prom = sum(s.promoted_at is not None for s in ds.streams)
    return json.dumps({"out": str(args.out), "n_stories": len(ds.streams),
                       "n_promoted": n_prom}) + "\n"


def cmd_evaluate(args) -> str:
    ds = read_dataset(args.dataset)
    params = None if args.params is None else _load_params(args.params)
    report = evaluate_dataset(ds, args.method, args.first_k, params, args.seed,
                              args.train_frac, args.threshold)
    return io.dump_json(report.to_dict())


def cmd_rdist(args) -> str:
    ds = read_dataset(args.dataset)
    params = None if args.params is None else _load_params(args.params)
    return io.dump_json(r_distribution(ds, args.every, not args.all, params))


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="socialvote", description="Social voting model toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, horizon=DEFAULT_HORIZON):
        p.add_argument("--params", help="model parameter JSON (default: bundled table values)")
        p.add_argument("--horizon", type=float, default=horizon, help="minutes")
        p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("simulate", help="deterministic solution for one story")
    common(p)
    p.add_argument("--story", required=True, help="r=<float>,S=<int>")
    p.add_argument("--step", type=float, default=DEFAULT_STEP)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("mc", help="stochastic vote-event streams")
    common(p)
    p.add_argument("--story", required=True)
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mean", action="store_true", help="emit the ensemble-mean trajectory CSV")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("fit", help="least-squares interestingness")
    common(p)
    p.add_argument("--obs", required=True, help="trajectory CSV or event-stream JSONL")
    p.add_argument("--fans", type=int)
    p.add_argument("--first-k", type=int)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("predict", help="forecast final votes from early history")
    common(p)
    p.add_argument("--events", required=True, help="JSONL file or directory of streams, or a CSV")
    p.add_argument("--fans", type=int)
    p.add_argument("--first-k", type=int, default=20)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("boundary", help="promotion boundary r_min(S)")
    common(p, horizon=1440.0)
    p.add_argument("--fans-grid", default="0,10,100,1000")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("generate", help="write a synthetic dataset")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--params")
    p.set_defaults(func=cmd_generate, stdout_only=True)

    p = sub.add_parser("evaluate", help="score a predictor on a dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--method", choices=METHODS, default="model")
    p.add_argument("--first-k", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--train-frac", type=float, default=0.5)
    p.add_argument("--threshold", type=float, default=505)
    p.add_argument("--params")
    p.add_argument("--out")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("rdist", help="fitted r per story plus lognormal MLE")
    p.add_argument("--dataset", required=True)
    p.add_argument("--every", type=float, default=30.0, help="sampling interval, minutes")
    p.add_argument("--all", action="store_true", help="include unpromoted stories")
    p.add_argument("--params")
    p.add_argument("--out")
    p.set_defaults(func=cmd_rdist)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
    except (SocialVoteError, ValueError, KeyError, OSError) as exc:
        _fail(type(exc).__name__, str(exc))
    _emit(text, None if getattr(args, "stdout_only", False) else args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
