"""
Command-line entry point
Subcommands: solve-exact, ptas, generate, verify. Reports go to stdout as JSON,
logs go to stderr.
"""
import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Sequence, Union

from pydantic import BaseModel, Field, ValidationError, field_validator

from .core.config import config
from .core.errors import (FormulaError, InstanceValidationError, ParameterError,
                          ResourceBudgetError, SelectionError, WrongGroundError)
from .core.formulas import S2SATFormula
from .core.model import Instance
from .extractors.cnf_extractor import load_formula
from .extractors.instance_extractor import load_instance, save_instance
from .generators.anticoncentration import produce_anticoncentration
from .generators.embedding import embed_in_complete_graph
from .generators.formulas import s3sat_to_s2sat
from .generators.random_instances import random_graphic, random_left_to_right
from .generators.reduction import s2sat_to_gmbs
from .policy.exact_policy import ExactPolicy
from .preprocess.classification import DEPTH_SCALED, UNIFORM
from .ptas.orchestrator import PtasOrchestrator, lp_guarantee_ratio, ptas_guarantee
from .ptas.runner import exact_run, failure_probability_check, monte_carlo
from .utils.logger import get_cli_logger
from .utils.rationals import format_rational, parse_rational
from .utils.report_generator import ReportGenerator
from .validators.property_verifier import PROPERTIES, PropertyVerifier

logger = get_cli_logger()

EXIT_PASS = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE_ERROR = 3

CLASSIFY_MODES = {"uniform": UNIFORM, "depth-scaled": DEPTH_SCALED}


class RunConfig(BaseModel):
    """Effective settings of one CLI run"""
    command: str
    instance: Optional[str] = None
    epsilon: str = "1/4"
    K: Union[int, Literal["auto"]] = "auto"
    trials: int = Field(default=config.DEFAULT_TRIALS, ge=1)
    seed: int = config.DEFAULT_SEED
    mode: Literal["exact", "mc"] = "mc"
    classify: Literal["uniform", "depth-scaled"] = "uniform"
    out: Optional[str] = None
    timing: bool = False

    @field_validator("epsilon", mode="before")
    @classmethod
    def epsilon_in_open_unit_interval(cls, v: Any) -> str:
        try:
            eps = parse_rational(v)
        except ValueError as e:
            raise ValueError(f"epsilon is not a rational: {v!r}") from e
        if not 0 < eps < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {eps}")
        return str(eps)

    @field_validator("K", mode="before")
    @classmethod
    def K_positive_or_auto(cls, v: Any) -> Union[int, str]:
        if isinstance(v, str) and v.strip().lower() == "auto":
            return "auto"
        k = int(v)
        if k < 1:
            raise ValueError(f"K must be at least 1, got {k}")
        return k

    @property
    def epsilon_value(self) -> Fraction:
        return Fraction(self.epsilon)

    @property
    def resolved_K(self) -> int:
        return config.auto_k(self.epsilon_value) if self.K == "auto" else int(self.K)


def _require_instance(run: RunConfig) -> Instance:
    if not run.instance:
        raise InstanceValidationError("--instance is required")
    return load_instance(run.instance)


def _try_exact_opt(instance: Instance) -> Optional[Fraction]:
    try:
        return ExactPolicy(instance).optimal_value()
    except ResourceBudgetError as e:
        logger.warning(f"Exact OPT skipped: {e}")
        return None


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------
def cmd_solve_exact(run: RunConfig) -> Dict[str, Any]:
    """Exact optimal online value of an instance file"""
    instance = _require_instance(run)
    policy = ExactPolicy(instance)
    opt = policy.optimal_value()
    logger.info(f"OPT of {instance.name or run.instance} = {opt}")
    result = {"instance": instance.name, "elements": instance.n,
              "opt": format_rational(opt), "states": len(policy.table)}
    return {"result": result, "passed": True}


def cmd_ptas(run: RunConfig) -> Dict[str, Any]:
    """
    Build and evaluate the composed policy

    Passes when the measured gain reaches the guarantee times the exact
    optimum (less three half-widths in Monte Carlo mode); without an exact
    optimum the run reports and passes.
    """
    instance = _require_instance(run)
    if not instance.is_laminar:
        raise WrongGroundError("ptas requires a laminar instance")
    orchestrator = PtasOrchestrator(run.epsilon_value, run.resolved_K,
                                    CLASSIFY_MODES[run.classify], timing=run.timing)
    policy = orchestrator.build(instance)

    result: Dict[str, Any] = {"lp_value": policy.lp_value, "K": policy.K,
                              "epsilon": str(policy.epsilon),
                              "big_bins": list(policy.classification.big),
                              "lp_guarantee_ratio": lp_guarantee_ratio(policy)}
    guarantee = ptas_guarantee(policy.epsilon)
    result["guarantee"] = guarantee
    result["guarantee_vacuous"] = guarantee == 0.0

    if run.mode == "exact":
        report = exact_run(policy)
        mean, slack = report.expected_gain, 1e-9
        result.update({"mean_gain": mean, "ci95": 0.0,
                       "discard_rates": report.discard_probability})
    else:
        mc = monte_carlo(policy, run.trials, run.seed)
        mean, slack = mc.mean_gain, 3 * mc.ci95
        result.update(mc.to_dict())

    failure = failure_probability_check(policy, exact=run.mode == "exact",
                                        trials=run.trials, seed=run.seed)
    result["failure_bound"] = failure.to_dict()

    opt = _try_exact_opt(instance)
    passed = True
    if opt is not None:
        opt_f = float(opt)
        result["opt_exact"] = format_rational(opt)
        result["ratio"] = mean / opt_f if opt_f > 0 else 1.0
        passed = mean >= guarantee * opt_f - slack
    result["construction"] = policy.to_dict()
    return {"result": result, "passed": passed}


def _load_s2sat(path: str) -> S2SATFormula:
    formula = load_formula(path)
    if not isinstance(formula, S2SATFormula):
        logger.info("3-literal clauses found; applying the 3CNF to 2CNF gadget")
        formula = s3sat_to_s2sat(formula)
    return formula


def cmd_generate(run: RunConfig, args: argparse.Namespace) -> Dict[str, Any]:
    """Write a generated instance and report its shape"""
    kind = args.kind
    audit: Dict[str, Any] = {}
    if kind == "anticoncentration":
        instance = produce_anticoncentration(args.r, args.k if args.k is not None else 3)
    elif kind in ("hardness", "embed"):
        if not args.cnf:
            raise InstanceValidationError(f"generate {kind} needs --cnf")
        formula = _load_s2sat(args.cnf)
        k = args.k if args.k is not None else max(formula.max_occurrence(), 1)
        if kind == "hardness":
            artifact = s2sat_to_gmbs(formula, k)
        else:
            artifact = embed_in_complete_graph(formula, k, vertex_count=args.vertices, seed=run.seed)
        instance = artifact.gmbs
        audit = {"k": k, "phases": {str(p): len(artifact.edges_in_phase(p))
                                    for p in sorted(set(artifact.phase_of_edge), key=str)},
                 **artifact.audit}
    else:
        if args.graphic:
            instance = random_graphic(args.n, args.vertices or max(args.n, 2), args.atoms, run.seed)
        else:
            instance = random_left_to_right(args.n, args.depth, args.max_cap, args.atoms, run.seed,
                                            root_capacity=args.root_cap)

    result: Dict[str, Any] = {"kind": kind, "name": instance.name, "elements": instance.n}
    if instance.is_laminar:
        result["bins"] = len(instance.laminar())
    else:
        result["vertices"] = instance.graphic().vertex_count
        result["edges"] = instance.n
    if audit:
        result["audit"] = audit
    if run.out:
        result["written"] = str(save_instance(instance, run.out))
    else:
        result["instance"] = instance.to_dict()
    return {"result": result, "passed": True}


def _verify_params(name: str, args: argparse.Namespace) -> Dict[str, Any]:
    params: Dict[str, Any] = {}
    if name in ("concentration", "firstuseless", "lp-dp"):
        if args.seeds is not None:
            params["seeds"] = args.seeds
        if args.n_max is not None:
            params["n_max"] = args.n_max
    elif name == "failure-prob":
        if args.Ks:
            params["Ks"] = args.Ks
    elif name == "gain-formula":
        if args.n_max is not None:
            params["n"] = args.n_max
        if args.max_clauses is not None:
            params["max_clauses"] = args.max_clauses
    elif name == "gadget":
        if args.n_max is not None:
            params["max_variables"] = args.n_max
        if args.max_clauses is not None:
            params["max_clauses"] = args.max_clauses
    elif name == "anticoncentration":
        params["r"], params["k"] = args.r, args.k
    return params


def cmd_verify(run: RunConfig, args: argparse.Namespace) -> Dict[str, Any]:
    """Run one property suite; fails on any violated check"""
    report = PropertyVerifier().run(args.property, **_verify_params(args.property, args))
    result = report.to_dict(include_passing=args.verbose_checks)
    result["summary"] = ReportGenerator.generate_batch_summary(report.checks)
    return {"result": result, "passed": report.passed}


# ----------------------------------------------------------------------
# Parser and dispatch
# ----------------------------------------------------------------------
def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--instance", help="Instance JSON path")
    parser.add_argument("--epsilon", default="1/4", help="Accuracy in (0, 1), e.g. 1/4 or 0.25")
    parser.add_argument("--K", default="auto", help="Big-bin threshold, integer or 'auto' (= ceil(eps^-4))")
    parser.add_argument("--trials", type=int, default=config.DEFAULT_TRIALS)
    parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    parser.add_argument("--mode", choices=["exact", "mc"], default="mc")
    parser.add_argument("--classify", choices=sorted(CLASSIFY_MODES), default="uniform")
    parser.add_argument("--out", help="Write the report (or generated instance) here")
    parser.add_argument("--timing", action="store_true", help="Include wall-clock timings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matroid-selection",
                                     description="Bayesian online selection on matroids")
    sub = parser.add_subparsers(dest="command", required=True)

    _common(sub.add_parser("solve-exact", help="Exact optimal online value"))
    _common(sub.add_parser("ptas", help="Build and evaluate the LP-based policy"))

    gen = sub.add_parser("generate", help="Write a generated instance")
    _common(gen)
    gen.add_argument("kind", choices=["anticoncentration", "hardness", "embed", "random"])
    gen.add_argument("--r", type=int, default=2)
    gen.add_argument("--k", type=int, default=None)
    gen.add_argument("--cnf", help="DIMACS formula for hardness/embed")
    gen.add_argument("--vertices", type=int, default=None)
    gen.add_argument("--n", type=int, default=6)
    gen.add_argument("--depth", type=int, default=2)
    gen.add_argument("--max-cap", dest="max_cap", type=int, default=3)
    gen.add_argument("--root-cap", dest="root_cap", type=int, default=None)
    gen.add_argument("--atoms", type=int, default=2)
    gen.add_argument("--graphic", action="store_true")

    ver = sub.add_parser("verify", help="Run a property suite")
    _common(ver)
    ver.add_argument("property", choices=list(PROPERTIES))
    ver.add_argument("--seeds", type=int, default=None)
    ver.add_argument("--n-max", dest="n_max", type=int, default=None)
    ver.add_argument("--max-clauses", dest="max_clauses", type=int, default=None)
    ver.add_argument("--Ks", type=int, nargs="+", default=None)
    ver.add_argument("--r", type=int, default=2)
    ver.add_argument("--k", type=int, default=3)
    ver.add_argument("--all-checks", dest="verbose_checks", action="store_true",
                     help="List passing checks too")
    return parser


def _emit(report: Dict[str, Any], out: Optional[str], to_file: bool) -> None:
    if to_file and out:
        ReportGenerator.save_report(report, Path(out))
    sys.stdout.write(ReportGenerator.dumps(report))


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand

    Returns:
        Exit code: 0 pass, 1 property failure, 2 input error, 3 resource budget
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    command = args.command

    try:
        config.validate()
    except ValueError as e:
        report = ReportGenerator.generate_error_report(command, str(e), EXIT_INPUT_ERROR, "config")
        _emit(report, None, False)
        return EXIT_INPUT_ERROR

    try:
        run = RunConfig(command=command, instance=args.instance, epsilon=args.epsilon, K=args.K,
                        trials=args.trials, seed=args.seed, mode=args.mode,
                        classify=args.classify, out=args.out, timing=args.timing)
    except ValidationError as e:
        message = "; ".join(err["msg"] for err in e.errors())
        report = ReportGenerator.generate_error_report(command, message, EXIT_INPUT_ERROR, "config")
        _emit(report, None, False)
        return EXIT_INPUT_ERROR

    started = time.perf_counter()
    try:
        if command == "solve-exact":
            outcome = cmd_solve_exact(run)
        elif command == "ptas":
            outcome = cmd_ptas(run)
        elif command == "generate":
            outcome = cmd_generate(run, args)
        else:
            outcome = cmd_verify(run, args)
    except ResourceBudgetError as e:
        logger.error(f"{command}: {e}")
        report = ReportGenerator.generate_error_report(command, str(e), EXIT_RESOURCE_ERROR, "resource")
        _emit(report, run.out, command != "generate")
        return EXIT_RESOURCE_ERROR
    except (InstanceValidationError, FormulaError, ParameterError, WrongGroundError) as e:
        logger.error(f"{command}: {e}")
        report = ReportGenerator.generate_error_report(command, str(e), EXIT_INPUT_ERROR, "input")
        _emit(report, run.out, command != "generate")
        return EXIT_INPUT_ERROR
    except SelectionError as e:
        logger.error(f"{command}: {e}")
        report = ReportGenerator.generate_error_report(command, str(e), EXIT_RESOURCE_ERROR,
                                                       type(e).__name__)
        _emit(report, run.out, command != "generate")
        return EXIT_RESOURCE_ERROR

    timing = {"seconds": round(time.perf_counter() - started, 6)} if run.timing else None
    report = ReportGenerator.generate_report(command, outcome["result"],
                                             run.model_dump(exclude={"command"}),
                                             outcome["passed"], timing)
    _emit(report, run.out, command != "generate")
    return report["exit_code"]


__all__ = ['RunConfig', 'build_parser', 'main', 'cmd_solve_exact', 'cmd_ptas',
           'cmd_generate', 'cmd_verify', 'EXIT_PASS', 'EXIT_PROPERTY_FAILURE',
           'EXIT_INPUT_ERROR', 'EXIT_RESOURCE_ERROR']
