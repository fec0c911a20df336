import sys

from collections.abc import Sequence

from pydantic import ValidationError

from src.cli.commands import COMMANDS, EXIT_ERROR, EXIT_NEGATIVE
from src.cli.parser import build_parser
from src.core.exceptions import AssumptionError, BaseError
from src.core.logger import get_logger, setup_logging
from src.core.settings import settings
from src.generator import build_G
from src.helpers import dump_json, from_json_file, to_json_file
from src.moments import eigen_table
from src.schemas import GeneratorMatrix, Refusal, RunConfig

logger = get_logger(__name__)


def _one_line(error: Exception) -> str:
    if isinstance(error, ValidationError):
        return "; ".join(f"{'.'.join(map(str, e['loc'])) or 'config'}: {e['msg']}" for e in error.errors())
    return " ".join(str(error).split())


def _refusal(error: AssumptionError, config: RunConfig) -> Refusal:
    G: GeneratorMatrix = build_G(config.process, config.n)  # noqa: N806
    return Refusal(message=str(error), eigenvalues=eigen_table(G, config.tolerance_settings()))


def run(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, run one subcommand and emit its JSON; returns the exit code.

    0 is success, 1 an honest negative (infeasible, assumption fails, failed validation)
    and 2 a usage or validation error reported as one line on stderr.
    """
    args = build_parser().parse_args(argv)
    setup_logging(settings.runtime.log_level)
    if args.threads is not None:
        if args.threads < 1:
            print(f"polycube: error: --threads must be at least 1, got {args.threads}", file=sys.stderr)  # noqa: T201
            return EXIT_ERROR
        settings.runtime.threads = args.threads

    try:
        config = RunConfig.model_validate(from_json_file(args.config))
        updates = {"output": args.output} if args.output is not None else {}
        if getattr(args, "seed", None) is not None:
            updates["seed"] = args.seed
        config = config.model_copy(update=updates)
        try:
            result, code = COMMANDS[args.command](config, args)
        except AssumptionError as e:
            result, code = _refusal(e, config), EXIT_NEGATIVE
    except (BaseError, ValidationError, ValueError) as e:
        logger.debug("Subcommand %s failed", args.command, exc_info=True)
        print(f"polycube: error: {_one_line(e)}", file=sys.stderr)  # noqa: T201
        return EXIT_ERROR

    if config.output is not None:
        to_json_file(result, config.output)
    else:
        sys.stdout.write(dump_json(result))
    return code
