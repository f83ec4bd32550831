import warnings

import numpy as np
import pytest

from spinsync import HPBreakdownWarning
from spinsync.scenario import RunConfig, preset_config


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def short_fig2a():
    """fig2a constants with a cheap horizon for I/O-level tests."""
    cfg = preset_config("fig2a")
    import dataclasses
    return dataclasses.replace(cfg, horizon=50.0, output_stride=10)


@pytest.fixture(autouse=True)
def _quiet_hp_warnings():
    # the fig2a/fig2d transients legitimately overshoot the truncation
    # bound; individual tests that care about the warning re-enable it
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HPBreakdownWarning)
        yield
