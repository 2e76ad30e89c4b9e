import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import empty_scenario
from psopath import (
    CollisionMode,
    OnReject,
    ScenarioError,
    ScenarioSyntaxError,
    parse_scenario,
    run,
    serialize_result,
    serialize_scenario,
)
from psopath.errors import InvalidInputError
from psopath.scenario_io import reference_scenario_text, scenario_to_dict

MINIMAL = {
    "start": [-70, 80],
    "target": [70, -70],
    "obstacles": [],
    "pso": {"n_particles": 50, "w": 0.8, "c1": 0.65, "c2": 0.9},
    "seed": 1,
}


def doc(**changes):
    d = json.loads(json.dumps(MINIMAL))
    for key, value in changes.items():
        section, _, field = key.partition("__")
        if field:
            d.setdefault(section, {})[field] = value
        else:
            d[section] = value
    return json.dumps(d)


def test_minimal_document_gets_defaults():
    sc = parse_scenario(doc())
    assert sc.params.v_max == math.inf
    assert sc.spread == 15.0
    assert sc.stop.epsilon == 1.0 and sc.stop.max_iterations == 500
    assert sc.policy.collision_mode is CollisionMode.SEGMENT_REJECT
    assert sc.policy.on_reject is OnReject.KEEP_VELOCITY
    assert sc.environment.bounds.as_list() == [-100, -100, 100, 100]
    assert sc.environment.obstacles == ()


def test_benchmark_row_carried_exactly():
    sc = parse_scenario(doc(pso={"n_particles": 50, "w": 0.45, "c1": 1.20, "c2": 1.70}, start=[-80, -10]))
    assert (sc.params.n_particles, sc.params.w, sc.params.c1, sc.params.c2) == (50, 0.45, 1.20, 1.70)
    assert sc.start == (-80, -10)


def test_inverted_obstacle_names_index():
    with pytest.raises(ScenarioError) as err:
        parse_scenario(doc(obstacles=[[0, 0, 5, 5], [10, 10, 5, 20]]))
    assert err.value.field == "obstacles[1]"


def test_syntax_error_reports_position():
    with pytest.raises(ScenarioSyntaxError) as err:
        parse_scenario('{\n  "seed": 1,\n  "start": [1, 2\n}')
    assert err.value.line == 4 and err.value.column >= 1
    assert "line 4" in str(err.value)


@pytest.mark.parametrize("missing", ["start", "target", "obstacles", "pso", "seed"])
def test_missing_field_named(missing):
    d = dict(MINIMAL)
    del d[missing]
    with pytest.raises(ScenarioError) as err:
        parse_scenario(json.dumps(d))
    assert err.value.field == missing


def test_missing_nested_field_named():
    with pytest.raises(ScenarioError) as err:
        parse_scenario(doc(pso={"n_particles": 5, "w": 0.5, "c1": 1.0}))
    assert err.value.field == "pso.c2"


@pytest.mark.parametrize("text", [
    doc(speed=3),
    doc(pso__cl=1.0),
    doc(stop__epsilom=1.0),
    doc(policy__mode="point_reject"),
    doc(space__bound=[0, 0, 1, 1]),
])
def test_unknown_keys_rejected(text):
    with pytest.raises(ScenarioError, match="unknown field"):
        parse_scenario(text)


@pytest.mark.parametrize("text, field", [
    (doc(stop__epsilon=-1.0), "stop.epsilon"),
    (doc(stop__max_iterations=0), "stop.max_iterations"),
    (doc(pso__n_particles=0), "pso.n_particles"),
    (doc(pso__n_particles=2.5), "pso.n_particles"),
    (doc(pso__w=-0.1), "pso.w"),
    (doc(pso__v_max=0), "pso.v_max"),
    (doc(pso__c1=True), "pso.c1"),
    (doc(policy__wall_margin=-1), "policy.wall_margin"),
    (doc(policy__on_reject="bounce"), "policy.on_reject"),
    (doc(seed=-1), "seed"),
    (doc(seed=2**64), "seed"),
    (doc(spread=-2), "spread"),
    (doc(start=[1, 2, 3]), "start"),
    (doc(space__bounds=[0, 0, 0, 10]), "space.bounds"),
    (doc(obstacles=[[-75, 75, -65, 85]]), "start"),
    (doc(target=[170, 0]), "target"),
])
def test_semantic_errors_name_the_field(text, field):
    with pytest.raises(ScenarioError) as err:
        parse_scenario(text)
    assert err.value.field == field


def test_margin_can_swallow_start():
    with pytest.raises(ScenarioError, match="start"):
        parse_scenario(doc(obstacles=[[-68, 70, -60, 90]], policy__wall_margin=3))


def test_v_max_forms():
    assert parse_scenario(doc(pso__v_max="unlimited")).params.v_max == math.inf
    assert parse_scenario(doc(pso__v_max=4)).params.v_max == 4.0


def test_reference_scenario_parses():
    sc = parse_scenario(reference_scenario_text())
    assert len(sc.environment.obstacles) == 2
    assert sc.policy.collision_mode is CollisionMode.SEGMENT_REJECT


# --- round trip --------------------------------------------------------------

num = st.floats(-1e3, 1e3, allow_nan=False)
left = st.tuples(st.floats(-95, -5), st.floats(-95, 95))


@st.composite
def documents(draw):
    d = {
        "start": list(draw(left)),
        "target": list(draw(left)),
        "obstacles": [],
        "pso": {
            "n_particles": draw(st.integers(1, 200)),
            "w": draw(st.floats(0, 2)),
            "c1": draw(st.floats(0, 3)),
            "c2": draw(st.floats(0, 3)),
        },
        "seed": draw(st.integers(0, 2**64 - 1)),
    }
    for _ in range(draw(st.integers(0, 4))):
        x0, y0 = draw(st.floats(0, 80)), draw(st.floats(-100, 80))
        d["obstacles"].append([x0, y0, x0 + draw(st.floats(0, 20)), y0 + draw(st.floats(0, 20))])
    if draw(st.booleans()):
        d["pso"]["v_max"] = draw(st.one_of(st.just("unlimited"), st.floats(0.1, 100)))
    if draw(st.booleans()):
        d["policy"] = {
            "collision_mode": draw(st.sampled_from(["point_reject", "segment_reject"])),
            "on_reject": draw(st.sampled_from(["keep_velocity", "zero_velocity"])),
            "wall_margin": draw(st.floats(0, 3)),
        }
    if draw(st.booleans()):
        d["stop"] = {"epsilon": draw(st.floats(0.01, 10)), "max_iterations": draw(st.integers(1, 1000))}
    if draw(st.booleans()):
        d["spread"] = draw(st.floats(0, 4))
    return json.dumps(d)


@settings(max_examples=200)
@given(documents())
def test_parse_serialize_round_trip(text):
    once = parse_scenario(text)
    again = parse_scenario(serialize_scenario(once))
    assert again == once
    assert scenario_to_dict(again) == scenario_to_dict(once)


# --- result serialization ------------------------------------------------------

def test_summary_for_zero_step_run():
    r = run(empty_scenario(start=(1, 1), target=(1, 1), spread=0.0, seed=5))
    assert serialize_result(r, "summary") == "converged=true\nsteps=0\nfinal_error=0.000000\nseed=5\n"


def test_trace_csv_shape():
    r = run(empty_scenario(seed=2, n=7))
    lines = serialize_result(r, "trace_csv").splitlines()
    assert lines[0] == "iteration,particle,x,y"
    assert len(lines) == (r.steps + 1) * 7 + 1
    it, idx, x, y = lines[8].split(",")
    assert (it, idx) == ("1", "0")
    assert len(x.split(".")[1]) == 6


def test_path_csv_error_column():
    r = run(empty_scenario(seed=2, n=7))
    lines = serialize_result(r, "path_csv").splitlines()
    assert lines[0] == "iteration,x,y,error"
    errors = [row.split(",")[3] for row in lines[1:]]
    assert errors == [f"{e:.6f}" for e in r.error_series]


def test_unknown_result_format():
    r = run(empty_scenario(start=(1, 1), target=(1, 1), spread=0.0))
    with pytest.raises(InvalidInputError):
        serialize_result(r, "xml")
