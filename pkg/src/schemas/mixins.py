from typing import Annotated, Any

from collections.abc import Callable

import numpy as np
import numpy.typing as npt

from pydantic import BaseModel, ConfigDict, PlainSerializer, PlainValidator, WithJsonSchema

type FloatArray = npt.NDArray[np.float64]


def _array_validator(ndim: int | None) -> Callable[[Any], FloatArray]:
    def validate(value: Any) -> FloatArray:
        try:
            array = np.array(value, dtype=float)
        except (TypeError, ValueError) as e:
            raise ValueError(f"Expected a real array: {e}") from e
        if ndim == 2 and array.size == 0 and array.ndim == 1:
            array = array.reshape(0, 0)
        if ndim is not None and array.ndim != ndim:
            raise ValueError(f"Expected an array with {ndim} dimensions, got shape {array.shape}")
        array.flags.writeable = False
        return array

    return validate


def _to_list(array: FloatArray) -> list[Any]:
    return array.tolist()


def _json_schema(depth: int) -> dict[str, Any]:
    schema: dict[str, Any] = {"type": "number"}
    for _ in range(depth):
        schema = {"type": "array", "items": schema}
    return schema


Vector = Annotated[
    FloatArray,
    PlainValidator(_array_validator(1)),
    PlainSerializer(_to_list, return_type=list),
    WithJsonSchema(_json_schema(1)),
]
Matrix = Annotated[
    FloatArray,
    PlainValidator(_array_validator(2)),
    PlainSerializer(_to_list, return_type=list),
    WithJsonSchema(_json_schema(2)),
]
Tensor = Annotated[
    FloatArray,
    PlainValidator(_array_validator(None)),
    PlainSerializer(_to_list, return_type=list),
    WithJsonSchema({"type": "array"}),
]


class FrozenModel(BaseModel):
    """Immutable value type; array fields are read-only copies of their input."""

    model_config = ConfigDict(frozen=True)
