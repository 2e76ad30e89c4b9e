import pytest

from psopath import Environment, MovePolicy, PsoParams, Rect, Scenario, StopRules, Vec2
from psopath.scenario_io import reference_scenario


def make_env(*rects, bounds=(-100, -100, 100, 100), margin=0.0):
    return Environment(Rect.from_bounds(*bounds), tuple(Rect.from_bounds(*r) for r in rects), margin)


def empty_scenario(seed=0, n=50, w=0.8, c1=0.65, c2=0.9, start=(-70, 80), target=(70, -70), **kw):
    return Scenario(
        environment=kw.pop("environment", Environment()),
        start=Vec2(*start),
        target=Vec2(*target),
        params=PsoParams(n, w, c1, c2, kw.pop("v_max", float("inf"))),
        policy=kw.pop("policy", MovePolicy()),
        stop=kw.pop("stop", StopRules()),
        seed=seed,
        **kw,
    )


@pytest.fixture(scope="session")
def reference():
    return reference_scenario()


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
