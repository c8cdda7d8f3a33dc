import numpy as np
import pytest

from sparsetls import derive_stream, generate_instance, scenario_config


@pytest.fixture
def s1_instance():
    """One fixed scenario-1 instance (xi = 0.01, master seed 0, trial 0)."""
    return generate_instance(scenario_config("s1"), derive_stream(0, 1, 0))


@pytest.fixture
def make_instance():
    def _make(name="s1", xi=0.01, seed=0, trial=0):
        from sparsetls.problems import SCENARIO_TAGS

        return generate_instance(
            scenario_config(name, xi=xi), derive_stream(seed, SCENARIO_TAGS[name], trial)
        )

    return _make


@pytest.fixture
def tiny_system():
    """2x2 identity system with b = [1, 0], used by several hand-checked cases."""
    return np.eye(2), np.array([1.0, 0.0])
