import re
import sys
from collections import OrderedDict
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from uav_nlos.presets import SUBURBAN_SCENE  # noqa: E402

_criteria: "OrderedDict[int, list]" = OrderedDict()


@pytest.fixture
def scene():
    return SUBURBAN_SCENE


@pytest.fixture
def scene_file(tmp_path):
    path = tmp_path / "scene.txt"
    path.write_text("# suburban test site\nd1_m = 100\nd2_m = 250\n"
                    "obstacle_height_m = 15\ngs_height_m = 25\n")
    return path


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    n, title = mark.args
    entry = _criteria.setdefault(n, [title, []])
    detail = re.sub(r"^test_criterion_\d+_", "", item.name)
    entry[1].append((detail, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, (title, results) in sorted(_criteria.items()):
        ok = all(p for _, p in results)
        failed = [d for d, p in results if not p]
        line = f"{'PASS' if ok else 'FAIL'}  {n}. {title}"
        if failed:
            line += "  [failing: " + ", ".join(failed) + "]"
        tr.write_line(line)
