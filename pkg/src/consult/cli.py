"""Command-line interface binding all modules.

Exit codes: 0 on success, 1 on validation or model failure, 2 on usage
errors (argparse's convention). All outputs are canonical JSON.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .canonical import canonical_json
from .decision import ThresholdTable, threshold_table
from .errors import ConsultError
from .formulation import Policy, formulate_full
from .generate import GeneratorSpec, generate_kb
from .harness import ExperimentSpec, find_unsound_case, run_soundness_experiment
from .kb import (
    findings_to_dict,
    kb_stats,
    kb_to_dict,
    load_findings,
    load_kb,
    save_kb,
    validate_kb,
)


def _emit(payload, out: str | None) -> None:
    text = canonical_json(payload)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _policy_from_args(args) -> Policy:
    method = {"mc": "montecarlo"}.get(args.method, args.method)
    return Policy(
        method=method,
        budget=args.budget,
        n_samples=args.samples,
        seed=args.seed,
        allow_unsafe_mc=getattr(args, "allow_unsafe_mc", False),
    )


def _add_infer_policy_args(p, default_method: str) -> None:
    p.add_argument(
        "--method",
        choices=["auto", "quickscore", "oracle", "bounds", "mc"],
        default=default_method,
    )
    p.add_argument("--budget", type=int, default=None, help="state budget for --method bounds")
    p.add_argument("--samples", type=int, default=20000, help="sample count for --method mc")
    p.add_argument("--seed", type=int, default=0, help="RNG seed for --method mc")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="consult",
        description="Diagnosis-and-treatment decision engine",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a knowledge-base file")
    p.add_argument("kb")

    p = sub.add_parser("generate", help="generate a synthetic knowledge base")
    p.add_argument("--diseases", type=int, required=True)
    p.add_argument("--manifestations", type=int, required=True)
    p.add_argument("--treatments", type=int, required=True)
    p.add_argument("--links", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--interaction-prob", type=float, default=0.25)
    p.add_argument("--disjoint-treats", action="store_true")
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("infer", help="posterior disease probabilities")
    p.add_argument("--kb", required=True)
    p.add_argument("--findings", required=True)
    _add_infer_policy_args(p, default_method="quickscore")
    p.add_argument("--allow-unsafe-mc", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("thresholds", help="compute the treatment threshold table")
    p.add_argument("--kb", required=True)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("formulate", help="build and solve the case-specific model")
    p.add_argument("--kb", required=True)
    p.add_argument("--findings", required=True)
    p.add_argument("--thresholds", default=None, help="cached threshold table (recomputed if omitted)")
    _add_infer_policy_args(p, default_method="auto")
    p.add_argument("--allow-unsafe-mc", action="store_true")
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("experiment", help="run a measurement experiment")
    exp = p.add_subparsers(dest="experiment", required=True)

    ps = exp.add_parser("soundness", help="agreement rate of reduced vs comprehensive")
    ps.add_argument("--cases", type=int, required=True)
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--diseases", type=int, default=6)
    ps.add_argument("--manifestations", type=int, default=8)
    ps.add_argument("--treatments", type=int, default=4)
    ps.add_argument("--links", type=int, default=2)
    ps.add_argument("-o", "--output", default=None)

    pu = exp.add_parser("unsound", help="construct a verified disagreement case")
    pu.add_argument("--seed", type=int, default=0)
    pu.add_argument("-o", "--output", default=None)

    p = sub.add_parser("serve", help="run the consult HTTP service")
    p.add_argument("--kb", required=True)
    p.add_argument("--thresholds", default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--cors-origin", action="append", default=None)
    p.add_argument("--log-dir", default=None)

    return parser


def _cmd_validate(args) -> int:
    from .errors import InvalidModelError

    try:
        kb = load_kb(args.kb)
    except InvalidModelError as e:
        for v in e.violations:
            print(str(v), file=sys.stderr)
        return 1
    _emit({"valid": True, "stats": kb_stats(kb)}, None)
    return 0


def _cmd_generate(args) -> int:
    spec = GeneratorSpec(
        n_diseases=args.diseases,
        n_manifestations=args.manifestations,
        n_treatments=args.treatments,
        links_per_manifestation=args.links,
        interaction_prob=args.interaction_prob,
        disjoint_treats=args.disjoint_treats,
        seed=args.seed,
    )
    kb = generate_kb(spec)
    if args.output:
        save_kb(kb, args.output)
    else:
        _emit(kb_to_dict(kb), None)
    return 0


def _load_inputs(args):
    kb = load_kb(args.kb)
    findings = load_findings(args.findings, kb)
    return kb, findings


def _cmd_infer(args) -> int:
    from .formulation import run_inference

    kb, findings = _load_inputs(args)
    report = run_inference(kb, findings, _policy_from_args(args))
    _emit(report.to_dict(), None)
    return 0


def _cmd_thresholds(args) -> int:
    kb = load_kb(args.kb)
    table = threshold_table(kb)
    _emit(table.to_dict(), args.output)
    return 0


def _cmd_formulate(args) -> int:
    kb, findings = _load_inputs(args)
    if args.thresholds:
        table = ThresholdTable.load(args.thresholds)
    else:
        table = threshold_table(kb)
    result = formulate_full(kb, findings, table, _policy_from_args(args))
    _emit(
        {
            "posteriors": result.report.to_dict(),
            "prune": [d.to_dict() for d in result.decisions],
            "reduced": result.model.to_dict(),
            "recommendation": result.recommendation.to_dict(),
        },
        args.output,
    )
    return 0


def _cmd_experiment(args) -> int:
    if args.experiment == "soundness":
        spec = ExperimentSpec(
            n_cases=args.cases,
            kb_spec=GeneratorSpec(
                n_diseases=args.diseases,
                n_manifestations=args.manifestations,
                n_treatments=args.treatments,
                links_per_manifestation=args.links,
            ),
            seed=args.seed,
        )
        report = run_soundness_experiment(spec)
        _emit(report.to_dict(), args.output)
        return 0
    case = find_unsound_case(args.seed)
    _emit(
        {
            "kb": kb_to_dict(case.kb),
            "findings": findings_to_dict(case.findings),
            "comprehensive_best": case.comprehensive_best,
            "reduced_best": case.reduced_best,
            "treatment": case.treatment_id,
            "boosters": case.boosters,
        },
        args.output,
    )
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    kb = load_kb(args.kb)
    table = ThresholdTable.load(args.thresholds) if args.thresholds else threshold_table(kb)
    app = create_app(
        kb,
        table,
        cors_origins=tuple(args.cors_origin) if args.cors_origin else ("*",),
        log_dir=args.log_dir,
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "generate": _cmd_generate,
    "infer": _cmd_infer,
    "thresholds": _cmd_thresholds,
    "formulate": _cmd_formulate,
    "experiment": _cmd_experiment,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConsultError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
