"""Command-line interface: optimize, eval, oracle, render.

Exit codes: 0 success, 2 malformed input, 3 valid input outside the
requested method's domain.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import document as doc_mod
from . import oracle as oracle_mod
from .core import DomainError, InputError, Instance, evaluate
from .strips import jitter, squeeze_with_plan, zigzag
from .svg import render_svg
from .waterfill import DEFAULT_DELTA, optimize_point_stabbed

METHODS = ("staircase", "squeeze", "zigzag", "jitter")


def _build_instance(ys, width: float, height_arg: str) -> Instance:
    if height_arg == "auto":
        height = max(ys) + 0.5
    else:
        try:
            height = float(height_arg)
        except ValueError:
            raise InputError(f"--height must be a number or 'auto', got {height_arg!r}")
    return Instance(width, height, tuple(ys))


def _cmd_optimize(args) -> int:
    data = doc_mod.ingest_csv(args.input)
    if data.has_duplicates:
        print(
            "warning: duplicate y-values in input; optimizers will reject them",
            file=sys.stderr,
        )
    instance = _build_instance(data.ys, args.width, args.height)
    params = {"delta": f"{args.delta:.12g}"}
    if args.method == "staircase":
        layout, g_star = optimize_point_stabbed(instance, delta=args.delta)
        params["g_star"] = f"{g_star:.12g}"
    elif args.method == "squeeze":
        layout, plan = squeeze_with_plan(instance, delta_stair=args.delta)
        params["bucket_delta_min"] = f"{plan.delta_min:.12g}"
    elif args.method == "zigzag":
        layout = zigzag(instance)
        params = {}
    else:
        layout = jitter(instance, args.seed)
        params = {"seed": str(args.seed)}
    doc = doc_mod.document_from_layout(
        instance, layout, labels=data.labels, method=args.method, params=params
    )
    doc_mod.save(doc, args.output)
    print(f"{args.method}: n={instance.n} min_gap={doc.meta.min_gap:.12g}")
    return 0


def _cmd_eval(args) -> int:
    doc = doc_mod.load(args.layout)
    instance, layout, labels = doc_mod.document_to_layout(doc)
    report = evaluate(instance, layout)
    print(f"min_gap={report.min_gap:.12g}")
    for label, sv, gap in zip(labels, report.per_square, report.gaps):
        print(f"{label}: visible_perimeter={sv.perimeter:.12g} gap={gap:.12g}")
    if args.report:
        payload = {
            "min_gap": report.min_gap,
            "per_square": [
                {
                    "id": label,
                    "visible_perimeter": sv.perimeter,
                    "left": sv.left,
                    "right": sv.right,
                    "top": sv.top,
                    "bottom": sv.bottom,
                    "gap": gap,
                }
                for label, sv, gap in zip(labels, report.per_square, report.gaps)
            ],
        }
        import json

        Path(args.report).write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    return 0


def _cmd_oracle(args) -> int:
    data = doc_mod.ingest_csv(args.input)
    instance = _build_instance(data.ys, args.width, args.height)
    result = oracle_mod.grid_search_restricted(
        instance, args.grid_steps, family=args.family, max_n=args.max_n
    )
    print(
        f"family={args.family} grid_steps={result.grid_steps} "
        f"best_min_gap={result.best_min_gap:.12g} "
        f"orders_examined={result.orders_examined}"
    )
    if args.output:
        doc = doc_mod.document_from_layout(
            instance,
            result.best_layout,
            labels=data.labels,
            method=f"oracle-{args.family}",
            params={"grid_steps": str(args.grid_steps)},
        )
        doc_mod.save(doc, args.output)
    return 0


def _cmd_render(args) -> int:
    doc = doc_mod.load(args.layout)
    Path(args.output).write_text(render_svg(doc, scale=args.scale), encoding="utf-8")
    print(f"wrote {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="visperim",
        description="Place unit squares in a strip to maximize the least visible perimeter.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_opt = sub.add_parser("optimize", help="compute a layout for a CSV of y-values")
    p_opt.add_argument("--input", required=True)
    p_opt.add_argument("--width", type=float, required=True)
    p_opt.add_argument("--height", default="auto")
    p_opt.add_argument("--method", choices=METHODS, required=True)
    p_opt.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    p_opt.add_argument("--seed", type=int, default=0)
    p_opt.add_argument("--output", required=True)
    p_opt.set_defaults(func=_cmd_optimize)

    p_eval = sub.add_parser("eval", help="evaluate a saved layout")
    p_eval.add_argument("--layout", required=True)
    p_eval.add_argument("--report", default=None)
    p_eval.set_defaults(func=_cmd_eval)

    p_or = sub.add_parser("oracle", help="brute-force search over orders and grid positions")
    p_or.add_argument("--input", required=True)
    p_or.add_argument("--width", type=float, required=True)
    p_or.add_argument("--height", default="auto")
    p_or.add_argument("--grid-steps", type=int, required=True)
    p_or.add_argument("--family", choices=oracle_mod.FAMILIES, default="any")
    p_or.add_argument("--max-n", type=int, default=oracle_mod.DEFAULT_MAX_N)
    p_or.add_argument("--output", default=None)
    p_or.set_defaults(func=_cmd_oracle)

    p_ren = sub.add_parser("render", help="render a saved layout as SVG")
    p_ren.add_argument("--layout", required=True)
    p_ren.add_argument("--output", required=True)
    p_ren.add_argument("--scale", type=float, default=80.0)
    p_ren.set_defaults(func=_cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
