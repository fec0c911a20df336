from typing import Any

import argparse

from collections.abc import Callable

from pydantic import BaseModel

from src.core.exceptions import ConfigError, RuleVerificationError
from src.core.logger import get_logger
from src.core.settings import settings
from src.cubature_ct import ct_feasibility, scan_point_sets, verify_ct
from src.cubature_dt import discrete_rule, stationary_gauss_rule, verify_dt
from src.cubature_lifted import lift, verify_lifted
from src.generator import build_G
from src.helpers import from_json_file
from src.moments import asymptotic, moment, moment_curve
from src.polynomials import Polynomial
from src.protocols import CubatureRuleProtocol
from src.schemas import (
    CTRule,
    DTRule,
    GeneratorMatrix,
    GeneratorReport,
    MomentCurveReport,
    MomentTarget,
    PathEnsemble,
    RunConfig,
    ScanReport,
    SimConfig,
    ValidationReference,
)
from src.simulate import Reference, compare_moments, simulate_ctmc, simulate_dtmc, simulate_sde

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2

type CommandResult = tuple[BaseModel, int]


def _generator(config: RunConfig) -> GeneratorMatrix:
    return build_G(config.process, config.n)


def _required[T](value: T | None, key: str) -> T:
    if value is None:
        raise ConfigError(f"Configuration key '{key}' is required by this subcommand")
    return value


def cmd_generator(config: RunConfig, _: argparse.Namespace) -> CommandResult:
    G = _generator(config)  # noqa: N806
    return GeneratorReport(G=G.G, basis=G.basis, polynomial_property=True), EXIT_OK


def cmd_moments(config: RunConfig, _: argparse.Namespace) -> CommandResult:
    G = _generator(config)  # noqa: N806
    x = _required(config.x, "x")
    curve = [moment_curve(G, x, t) for t in config.times]
    return MomentCurveReport(x=x, times=config.times, curve=curve), EXIT_OK


def cmd_asymptotic(config: RunConfig, _: argparse.Namespace) -> CommandResult:
    result = asymptotic(_generator(config), override=config.jordan, tolerances=config.tolerance_settings())
    return result, EXIT_OK if result.a2_holds else EXIT_NEGATIVE


def cmd_check_ct(config: RunConfig, _: argparse.Namespace) -> CommandResult:
    check = ct_feasibility(_generator(config), _required(config.points, "points"), config.tolerance_settings())
    return check, EXIT_OK if check.feasible else EXIT_NEGATIVE


def cmd_scan_ct(config: RunConfig, _: argparse.Namespace) -> CommandResult:
    size = _required(config.size, "size")
    rules = scan_point_sets(
        _generator(config), _required(config.grid, "grid"), size, config.limit, config.tolerance_settings()
    )
    return ScanReport(size=size, rules=rules), EXIT_OK if rules else EXIT_NEGATIVE


def cmd_lift(config: RunConfig, _: argparse.Namespace) -> CommandResult:
    G = _generator(config)  # noqa: N806
    tolerances = config.tolerance_settings()
    rule = lift(G, override=config.jordan, tolerances=tolerances)
    report = verify_lifted(rule, G, config.times, tolerances)
    if not report.passed:
        logger.warning("Lifted rule fails its verification: %s", report.model_dump_json())
        raise RuleVerificationError("Lifted rule fails its verification against the configured process")
    return rule, EXIT_OK


def cmd_discrete(config: RunConfig, _: argparse.Namespace) -> CommandResult:
    G = _generator(config)  # noqa: N806
    tolerances = config.tolerance_settings()
    if config.points is not None:
        points: Any = config.points
    else:
        count = _required(config.gauss_points, "points' or 'gauss_points")
        points = stationary_gauss_rule(config.process, count, config.n, tolerances).points
    rule = discrete_rule(G, points, config.delta_init, tolerances=tolerances)
    report = verify_dt(rule, G, 10, tolerances=tolerances)
    if not report.passed:
        logger.warning("Discrete rule fails its verification: %s", report.model_dump_json())
        raise RuleVerificationError("Discrete rule fails its verification against the configured process")
    return rule, EXIT_OK


def load_rule(path: Any, G: GeneratorMatrix, config: RunConfig) -> CubatureRuleProtocol:  # noqa: N803
    """Read a CTRule or DTRule file (or a check-ct result holding one) and re-verify it against G."""
    data = from_json_file(path)
    if not isinstance(data, dict):
        raise ConfigError(f"{path} does not hold a rule object")
    if isinstance(data.get("rule"), dict):
        data = data["rule"]
    rule: CTRule | DTRule
    if "L" in data and "points" in data:
        rule = CTRule.model_validate(data)
    elif "Q" in data:
        rule = DTRule.model_validate(data)
    else:
        raise ConfigError(f"{path} holds neither a continuous-time nor a discrete-time rule")
    if rule.n != G.n:
        raise RuleVerificationError(f"Rule in {path} matches moments up to degree {rule.n}, the configuration has n = {G.n}")

    if isinstance(rule, CTRule):
        passed = verify_ct(rule, G, config.times).passed
    else:
        passed = verify_dt(rule, G, 10, tolerances=config.tolerance_settings()).passed
    if not passed:
        raise RuleVerificationError(f"Rule in {path} fails verification against the configured process")
    return rule


def _targets(config: RunConfig, d: int) -> list[MomentTarget]:
    if not config.targets:
        return [MomentTarget(p=Polynomial.variable(d, 0), t=1.0, label="x0@1")]
    return [
        MomentTarget(
            p=Polynomial.from_dict(d, {target.alpha: 1.0}),
            t=target.t,
            label=f"x^{list(target.alpha)}@{target.t:g}",
        )
        for target in config.targets
    ]


def _sde_ensemble(config: RunConfig, start: Any, targets: list[MomentTarget], n_paths: int, seed: int) -> PathEnsemble:
    times = tuple(sorted({target.t for target in targets}))
    steps = {"dt": config.dt} if config.dt is not None else {}
    cfg = SimConfig(n_paths=n_paths, seed=seed, horizon=max(times[-1], 1e-12), times=times, **steps)
    return simulate_sde(config.process, start, cfg)


def _chain_ensemble(
    rule: CubatureRuleProtocol, config: RunConfig, targets: list[MomentTarget], n_paths: int
) -> tuple[PathEnsemble, list[MomentTarget]]:
    """Chain paths of a stored rule; discrete targets move to the nearest multiple of Δ."""
    if isinstance(rule, DTRule):
        steps = max(round(target.t / rule.delta) for target in targets)
        targets = [target.model_copy(update={"t": round(target.t / rule.delta) * rule.delta}) for target in targets]
        cfg = SimConfig(n_paths=n_paths, seed=config.seed, horizon=max(steps, 1) * rule.delta)
        return simulate_dtmc(rule.Q, rule.points, config.start_index, steps, cfg, delta=rule.delta), targets
    if isinstance(rule, CTRule):
        times = tuple(sorted({target.t for target in targets}))
        cfg = SimConfig(n_paths=n_paths, seed=config.seed, horizon=max(times[-1], 1e-12), times=times)
        return simulate_ctmc(rule.L, rule.points, config.start_index, cfg), targets
    raise ConfigError(f"Unsupported rule type {type(rule).__name__}")


def cmd_validate(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    """Chain paths of ``--rule`` started at its point ``start_index``, or Euler paths from ``x`` without a
    rule, against closed-form moments; ``reference: sde`` compares chain paths with Euler paths instead."""
    G = _generator(config)  # noqa: N806
    targets = _targets(config, config.process.d)
    n_paths = args.paths if args.paths is not None else settings.simulation.n_paths

    rule = load_rule(args.rule, G, config) if args.rule is not None else None
    if rule is None:
        start: Any = _required(config.x, "x")
        ensemble = _sde_ensemble(config, start, targets, n_paths, config.seed)
    else:
        if config.start_index >= rule.points.shape[0]:
            raise ConfigError(f"start_index {config.start_index} exceeds the {rule.points.shape[0]} rule points")
        start = rule.points[config.start_index]
        ensemble, targets = _chain_ensemble(rule, config, targets, n_paths)

    def closed_form(target: MomentTarget) -> float:
        return moment(G, start, target.p, target.t)

    reference: Reference = closed_form
    if rule is not None and config.reference is ValidationReference.SDE:
        reference = _sde_ensemble(config, start, targets, n_paths, config.seed + 1)

    report = compare_moments(ensemble, reference, targets)
    if args.csv is not None:
        report.to_csv(args.csv)
    return report, EXIT_OK if report.passed else EXIT_NEGATIVE


COMMANDS: dict[str, Callable[[RunConfig, argparse.Namespace], CommandResult]] = {
    "generator": cmd_generator,
    "moments": cmd_moments,
    "asymptotic": cmd_asymptotic,
    "check-ct": cmd_check_ct,
    "scan-ct": cmd_scan_ct,
    "lift": cmd_lift,
    "discrete": cmd_discrete,
    "validate": cmd_validate,
}
