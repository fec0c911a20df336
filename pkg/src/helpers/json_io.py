from typing import Any

from pathlib import Path

from pydantic import BaseModel
from pydantic_core import from_json

from src.core.exceptions import ConfigError


def from_json_file(path: str | Path) -> Any:
    """Read a JSON document, reporting parse errors with their position."""
    try:
        with Path(path).open("rb") as file:
            return from_json(file.read())
    except OSError as e:
        raise ConfigError(f"Cannot read {path}: {e}") from e
    except ValueError as e:
        raise ConfigError(f"Malformed JSON in {path}: {e}") from e


def to_json_file(model: BaseModel, path: str | Path) -> None:
    """Write a model atomically through a temporary sibling file."""
    target = Path(path)
    temp_file = target.with_suffix(target.suffix + ".tmp")
    try:
        temp_file.write_text(dump_json(model), encoding="utf-8")
        temp_file.replace(target)
    except OSError as e:
        raise ConfigError(f"Cannot write {path}: {e}") from e
    finally:
        temp_file.unlink(missing_ok=True)


def dump_json(model: BaseModel) -> str:
    """Indented JSON with a trailing newline, identical for files and stdout."""
    return model.model_dump_json(indent=2) + "\n"
