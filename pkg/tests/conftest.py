import os
from pathlib import Path

import hypothesis
import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from kalgorithm.image import GrayImage

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

GOLDEN = Path(__file__).parent / "golden"


@st.composite
def gray_images(draw, max_side=12, values=st.integers(0, 255)):
    h = draw(st.integers(1, max_side))
    w = draw(st.integers(1, max_side))
    arr = draw(arrays(np.uint8, (h, w), elements=values))
    return GrayImage(arr)


@pytest.fixture
def golden_dir():
    return GOLDEN


# --- acceptance summary ------------------------------------------------------

_acceptance_results: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): acceptance criterion")


def pytest_runtest_logreport(report):
    label = getattr(report, "acceptance_label", None)
    if label is None:
        return
    if report.when == "call" or report.outcome != "passed":
        previous = _acceptance_results.get(label, "PASS")
        ok = report.outcome == "passed" and previous == "PASS"
        _acceptance_results[label] = "PASS" if ok else "FAIL"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        outcome.get_result().acceptance_label = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_acceptance_results):
        terminalreporter.write_line(f"{_acceptance_results[label]}  {label}")
