import argparse

from pathlib import Path

COMMANDS: dict[str, str] = {
    "generator": "Matrix of the generator on Pol_n",
    "moments": "Moment curve E_x[H_n(X_t)] at the configured times",
    "asymptotic": "Limit matrix and asymptotic moments",
    "check-ct": "Continuous-time cubature feasibility on the configured points",
    "scan-ct": "Feasible point sets of a candidate grid",
    "lift": "Lifted Markov cubature rule",
    "discrete": "Discrete-time cubature rule and its time step",
    "validate": "Monte Carlo validation of a stored rule or of Euler paths",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polycube", description="Markov cubature rules for polynomial diffusions")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, description in COMMANDS.items():
        command = subparsers.add_parser(name, help=description, description=description)
        command.add_argument("--config", type=Path, required=True, help="JSON run configuration")
        command.add_argument("--output", type=Path, default=None, help="Output file, overrides the config key")
        command.add_argument("--threads", type=int, default=None, help="Worker threads (env: POLYCUBE_THREADS)")
        if name == "validate":
            command.add_argument(
                "--rule", type=Path, default=None, help="Rule file written by check-ct or discrete; Euler paths from x when absent"
            )
            command.add_argument("--paths", type=int, default=None, help="Number of simulated paths")
            command.add_argument("--seed", type=int, default=None, help="Root seed, overrides the config key")
            command.add_argument("--csv", type=Path, default=None, help="Also write the report rows as CSV")
    return parser
