"""Command-line entry point for the threshold lab."""

import argparse
import json
import sys
from typing import Any

from src.config.experiment_config import ExperimentConfig, ExperimentConfigLoader
from src.core.literals import parse_sample
from src.core.ordering import order_type
from src.harness.experiments import kl_growth_experiment, run_tradeoff_experiment, spacing_event_probability
from src.harness.reporting import write_report
from src.homogeneity.checker import DEFAULT_EVALUATION_CAP, check_approx_homogeneity
from src.homogeneity.profiles import p_profile, representative_samples
from src.homogeneity.towers import iterated_log, parse_tower, phi, phi_threshold, ramsey_homogeneous_size
from src.learners import LearnerFactory
from src.pacbayes.intervals import wilson_interval
from src.pacbayes.priors import PriorFactory
from src.sensitivity.certificates import default_repetitions, family_average, kl_certificate, lemma3_family
from src.sensitivity.indices import sensitive_index
from src.utils.exceptions import BudgetExhaustedException, LabException, ValidationFailure
from src.utils.logging import create_log_filename, get_logger, log_exception, setup_logging

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VALIDATION = 2
EXIT_BUDGET = 3


def create_argument_parser() -> argparse.ArgumentParser:
    """Create and configure the command-line argument parser.

    Returns:
        Configured ArgumentParser instance
    """
    parser = argparse.ArgumentParser(
        prog="threshlab",
        description="Experiments on PAC-Bayes explanations of learners for 1-D thresholds.",
        epilog="Sample literals look like '(1,-);(5,+);(8,+)'.",
    )
    parser.add_argument("--seed", type=int, default=None, help="Base seed for every random stream")
    parser.add_argument("--out", metavar="PATH", help="Write the report to PATH")
    parser.add_argument("--format", dest="output_format", choices=["csv", "json"], default=None, help="Report format")
    parser.add_argument("--config", "-c", metavar="CONFIG_FILE", help="JSON experiment config; overrides flags")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes for independent trials")
    parser.add_argument("--debug", "-d", action="store_true", help="Enable debug logging")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging")
    parser.add_argument("--version", action="version", version="threshold-lab 0.1.0")

    sub = parser.add_subparsers(dest="command", required=True)

    tradeoff = sub.add_parser("tradeoff", help="Loss versus KL on the hard distribution")
    tradeoff.add_argument("--learner", help="Learner spec, e.g. exp:beta=8")
    tradeoff.add_argument("--n", type=int)
    tradeoff.add_argument("--m", type=int)
    tradeoff.add_argument("--gamma", type=float)
    tradeoff.add_argument("--delta", type=float)
    tradeoff.add_argument("--trials", type=int)
    tradeoff.add_argument("--prior", help="uniform | cover:<eps> | point:<k> | optimal")
    tradeoff.add_argument("--prior-trials", type=int)
    tradeoff.add_argument("--kl-constant", type=float)
    tradeoff.add_argument("--reps", type=int)
    tradeoff.add_argument("--homogeneous-search", action="store_true", default=None)

    spacing = sub.add_parser("spacing", help="Frequency of the well-spaced sample event")
    spacing.add_argument("--k", type=int, required=True)
    spacing.add_argument("--m", type=int, nargs="+", required=True)
    spacing.add_argument("--trials", type=int, default=10_000)

    growth = sub.add_parser("kl-growth", help="Median KL against the prior as the domain grows")
    growth.add_argument("--learner")
    growth.add_argument("--m", type=int)
    growth.add_argument("--n-grid", type=int, nargs="+")
    growth.add_argument("--trials", type=int)
    growth.add_argument("--prior")
    growth.add_argument("--prior-trials", type=int)

    profile = sub.add_parser("profile", help="p-profile of a learner on the type of a sample")
    profile.add_argument("--learner", required=True)
    profile.add_argument("--sample", required=True, help="Sample literal")
    profile.add_argument("--n", type=int, help="Domain size (defaults to the largest sample point)")
    profile.add_argument("--reps", type=int, default=0, help="Extra random representatives of the same type")

    check = sub.add_parser("check-homogeneity", help="Approximate homogeneity verdict")
    check.add_argument("--learner", required=True)
    check.add_argument("--n", type=int, required=True)
    check.add_argument("--m", type=int, required=True)
    check.add_argument("--gamma", type=float, required=True)
    check.add_argument("--exhaustive-cap", type=int, default=DEFAULT_EVALUATION_CAP)

    cert = sub.add_parser("sensitivity-cert", help="KL certificates for the sensitivity family")
    cert.add_argument("--b", type=int, required=True)
    cert.add_argument("--q1", type=float, default=0.25)
    cert.add_argument("--q2", type=float, default=0.75)
    cert.add_argument("--r", default="auto", help="Repetitions or 'auto'")
    cert.add_argument("--trials", type=int, default=1000)
    cert.add_argument("--prior", default="average", help="average | uniform | cover:<eps> | point:<k>")

    ramsey = sub.add_parser("ramsey", help="Homogeneous-set size bounds for a tower-sized domain")
    ramsey.add_argument("--m", type=int, required=True)
    ramsey.add_argument("--gamma", type=float, required=True)
    ramsey.add_argument("--n", required=True, help="Tower literal: d, 2^k or 2^^h(t)")
    ramsey.add_argument("--s", type=float, default=1.0, help="Target size for the threshold tower")

    return parser


def _emit(
    args: argparse.Namespace,
    payload: dict[str, Any],
    rows: list[dict[str, Any]] | None = None,
    cfg: ExperimentConfig | None = None,
) -> None:
    """Print ``payload`` as JSON and write rows (or the payload) to the report path when one is set.

    With a resolved ``cfg`` its ``output`` and ``output_format`` win over the flags.
    """
    out = cfg.output if cfg is not None else args.out
    output_format = cfg.output_format if cfg is not None else args.output_format or "csv"
    if out:
        if cfg is not None:
            config = cfg.to_dict()
        else:
            config = {key: value for key, value in vars(args).items() if key not in ("debug", "verbose")}
        write_report(rows if rows is not None else [payload], out, output_format, config=config, summary=payload)
    print(json.dumps(payload, indent=2, default=str))


def _experiment_values(args: argparse.Namespace, names: list[str]) -> dict[str, Any]:
    values = {name: getattr(args, name, None) for name in names}
    values.update(seed=args.seed, workers=args.workers, output=args.out, output_format=args.output_format)
    return values


def handle_tradeoff(args: argparse.Namespace) -> None:
    names = ["learner", "n", "m", "gamma", "delta", "trials", "prior", "prior_trials", "kl_constant", "reps"]
    values = _experiment_values(args, names)
    values["homogeneous_search"] = args.homogeneous_search
    cfg = ExperimentConfigLoader().build(values, args.config)
    report = run_tradeoff_experiment(cfg)
    _emit(args, report.summary(), report.rows(), cfg)


def handle_spacing(args: argparse.Namespace) -> None:
    seed = args.seed or 0
    rows = []
    for m in args.m:
        frequency = spacing_event_probability(args.k, m, args.trials, seed)
        lower, upper = wilson_interval(round(frequency * args.trials), args.trials)
        rows.append({"k": args.k, "m": m, "trials": args.trials, "frequency": frequency, "lower": lower, "upper": upper})
    _emit(args, {"rows": rows}, rows)


def handle_kl_growth(args: argparse.Namespace) -> None:
    values = _experiment_values(args, ["learner", "m", "trials", "prior", "prior_trials"])
    values["n_grid"] = args.n_grid
    cfg = ExperimentConfigLoader().build(values, args.config)
    table = kl_growth_experiment(
        cfg.learner, cfg.m, cfg.n_grid, cfg.trials, cfg.seed, cfg.prior, cfg.prior_trials, cfg.workers
    )
    rows = [row.to_dict() for row in table.rows]
    summary = {"learner": table.learner, "prior": table.prior, "strictly_increasing": table.strictly_increasing(), "rows": rows}
    _emit(args, summary, rows, cfg)


def handle_profile(args: argparse.Namespace) -> None:
    sample = parse_sample(args.sample, args.n)
    learner = LearnerFactory.create(args.learner)
    t = order_type(sample)
    points = range(1, sample.n + 1)
    samples = [sample]
    if args.reps:
        samples += representative_samples(t, points, sample.n, args.reps, seed=args.seed or 0)
    profile = p_profile(learner, t, points, n=sample.n, samples=samples)
    payload = profile.to_dict()
    if profile.is_complete:
        payload["sensitive_index"] = sensitive_index(profile, 1 / sample.m).to_dict()["index"]
    _emit(args, payload)


def handle_check_homogeneity(args: argparse.Namespace) -> None:
    learner = LearnerFactory.create(args.learner)
    verdict = check_approx_homogeneity(
        learner,
        range(1, args.n + 1),
        args.m,
        args.gamma,
        evaluation_cap=args.exhaustive_cap,
        n=args.n,
        seed=args.seed or 0,
        workers=args.workers or 1,
    )
    _emit(args, verdict.to_dict())
    if not verdict.passed:
        raise ValidationFailure("check-homogeneity", f"worst violation {verdict.worst_violation:.6g}", verdict.witness)


def handle_sensitivity_cert(args: argparse.Namespace) -> None:
    family = lemma3_family(args.b, args.q1, args.q2)
    n = 2**args.b
    prior = family_average(family) if args.prior == "average" else PriorFactory.create(args.prior, n)
    r = default_repetitions(args.b, args.q1, args.q2) if args.r == "auto" else int(args.r)
    report = kl_certificate(
        family, prior, args.q1, args.q2, r, trials=args.trials, seed=args.seed or 0, workers=args.workers or 1
    )
    rows = [row.to_dict() for row in report.rows]
    summary = {key: value for key, value in report.to_dict().items() if key != "rows"}
    summary["total_prior_mass"] = report.total_prior_mass()
    _emit(args, summary, rows)
    if not report.valid:
        raise ValidationFailure("sensitivity-cert", f"{len(report.violations)} premise violations in the family")


def handle_ramsey(args: argparse.Namespace) -> None:
    n = parse_tower(args.n)
    colors = (10 * args.m / args.gamma) ** (2 * args.m)
    _emit(
        args,
        {
            "n": str(n),
            "iterated_log": str(iterated_log(args.m, n)),
            "phi": phi(args.m, args.gamma, n),
            "ramsey_size": ramsey_homogeneous_size(max(2, round(colors)), args.m + 1, n),
            "threshold": str(phi_threshold(args.m, args.gamma, args.s)),
        },
    )


HANDLERS = {
    "tradeoff": handle_tradeoff,
    "spacing": handle_spacing,
    "kl-growth": handle_kl_growth,
    "profile": handle_profile,
    "check-homogeneity": handle_check_homogeneity,
    "sensitivity-cert": handle_sensitivity_cert,
    "ramsey": handle_ramsey,
}


def main(argv: list[str] | None = None) -> int:
    """Main entry point; returns the process exit code."""
    parser = create_argument_parser()
    args = parser.parse_args(argv)

    log_file = create_log_filename() if args.debug or args.verbose else None
    setup_logging(debug=args.debug, verbose=args.verbose, log_file=log_file)
    logger = get_logger("main")
    logger.debug(f"Arguments: {vars(args)}")

    try:
        HANDLERS[args.command](args)
        return EXIT_OK
    except KeyboardInterrupt:
        logger.info("Interrupted by user (Ctrl+C)")
        print("\nInterrupted.", file=sys.stderr)
        return EXIT_ERROR
    except ValidationFailure as e:
        logger.warning(str(e))
        print(f"Validation failed: {e.get_user_friendly_message()}", file=sys.stderr)
        return EXIT_VALIDATION
    except BudgetExhaustedException as e:
        logger.warning(str(e))
        print(f"Budget exhausted: {e.get_user_friendly_message()}", file=sys.stderr)
        return EXIT_BUDGET
    except LabException as e:
        log_exception(logger, e)
        print(f"Error: {e.get_user_friendly_message()}", file=sys.stderr)
        for suggestion in e.get_recovery_suggestions():
            print(f"  - {suggestion}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as e:
        logger.critical(f"Unexpected error: {e}")
        print(f"Unexpected error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
