import json

import numpy as np
import pytest

from polyfactory.factories.pydantic_factory import ModelFactory
from pydantic import ValidationError

from src.core.exceptions import ConfigError
from src.core.settings import settings
from src.helpers import dump_json, from_json_file, parallel_map, to_json_file
from src.polynomials import basis_indices
from src.schemas import (
    CTRule,
    DTRule,
    GeneratorReport,
    RunConfig,
    SimConfig,
    StaticCubature,
    TargetConfig,
    rate_matrix_defect,
)
from tests.conftest import ou_spec


class BaseFactory:
    __random_seed__ = 1


class TargetConfigFactory(BaseFactory, ModelFactory[TargetConfig]): ...


@pytest.fixture
def process():
    return ou_spec().model_dump(mode="json")


class TestRunConfig:
    def test_tolerance_override(self, process):
        config = RunConfig(process=process, n=2, tolerances={"tol.cone": 1e-7})
        tolerances = config.tolerance_settings()
        assert tolerances.cone == 1e-7, "Override must apply"
        assert settings.tol.cone == 1e-9, "Global settings must stay untouched"

    def test_unknown_tolerance_key(self, process):
        with pytest.raises(ValidationError, match="Unknown tolerance keys"):
            RunConfig(process=process, n=2, tolerances={"cone": 1e-7})

    def test_nonpositive_tolerance(self, process):
        with pytest.raises(ValidationError, match="positive"):
            RunConfig(process=process, n=2, tolerances={"tol.rank": 0.0})

    def test_extra_key(self, process):
        with pytest.raises(ValidationError):
            RunConfig.model_validate({"process": process, "n": 2, "degree": 3})

    def test_targets(self, process):
        targets = TargetConfigFactory.batch(size=3)
        config = RunConfig(process=process, n=2, targets=targets)
        assert config.targets == targets, "Targets must be kept in order"
        assert all(target.t >= 0 for target in config.targets)


class TestModels:
    def test_arrays_are_read_only(self):
        rule = StaticCubature(points=[[0.0], [1.0]], weights=[0.5, 0.5])
        with pytest.raises(ValueError, match="read-only"):
            rule.weights[0] = 1.0

    def test_positive_weights(self):
        with pytest.raises(ValidationError, match="strictly positive"):
            StaticCubature(points=[[0.0], [1.0]], weights=[1.0, 0.0])

    def test_rate_matrix(self):
        basis = basis_indices(1, 1)
        H = [[1.0, 0.0], [1.0, 1.0]]  # noqa: N806
        with pytest.raises(ValidationError, match="rate matrix"):
            CTRule(points=[[0.0], [1.0]], basis=basis, n=basis.n, L=[[-1.0, 2.0], [0.0, 0.0]], H=H)
        assert rate_matrix_defect(np.array([[-1.0, 1.0], [2.0, -2.0]])) == 0.0

    def test_rule_degree(self):
        basis = basis_indices(1, 1)
        H = [[1.0, 0.0], [1.0, 1.0]]  # noqa: N806
        rule = CTRule(points=[[0.0], [1.0]], basis=basis, n=1, L=[[-1.0, 1.0], [1.0, -1.0]], H=H)
        assert json.loads(dump_json(rule))["n"] == 1, "Rules must carry their degree"
        with pytest.raises(ValidationError, match="basis degree"):
            CTRule(points=[[0.0], [1.0]], basis=basis, n=2, L=[[-1.0, 1.0], [1.0, -1.0]], H=H)

    def test_stochastic_matrix(self):
        basis = basis_indices(1, 1)
        H = [[1.0, 0.0], [1.0, 1.0]]  # noqa: N806
        with pytest.raises(ValidationError, match="row-stochastic"):
            DTRule(points=[[0.0], [1.0]], basis=basis, n=basis.n, delta=1.0, Q=[[0.5, 0.6], [0.5, 0.5]], H=H)

    def test_observation_times(self):
        with pytest.raises(ValidationError, match="horizon"):
            SimConfig(horizon=1.0, times=(0.5, 2.0))
        assert SimConfig(horizon=2.0).observation_times == (0.0, 2.0)


class TestJsonIO:
    def test_file_matches_dump(self, tmp_path):
        report = GeneratorReport(G=np.eye(2), basis=basis_indices(1, 1), polynomial_property=True)
        path = tmp_path / "report.json"
        to_json_file(report, path)
        assert path.read_text(encoding="utf-8") == dump_json(report)
        assert dump_json(report).endswith("}\n"), "JSON ends with one newline"
        assert not list(tmp_path.glob("*.tmp")), "Temporary file must be gone"
        assert from_json_file(path)["G"] == [[1.0, 0.0], [0.0, 1.0]]

    def test_malformed(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("[1, 2", encoding="utf-8")
        with pytest.raises(ConfigError, match="Malformed JSON"):
            from_json_file(path)


class TestParallelMap:
    @pytest.mark.parametrize("threads", [1, 4])
    def test_order(self, threads):
        assert parallel_map(lambda k: k * k, range(20), threads) == [k * k for k in range(20)]

    def test_settings_threads(self, mocker):
        mocker.patch.object(settings.runtime, "threads", 3)
        assert parallel_map(str, [3, 1, 2]) == ["3", "1", "2"]
