from src.cli.app import run
from src.cli.commands import COMMANDS, EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, load_rule
from src.cli.parser import build_parser

__all__: list[str] = ["COMMANDS", "EXIT_ERROR", "EXIT_NEGATIVE", "EXIT_OK", "build_parser", "load_rule", "run"]
