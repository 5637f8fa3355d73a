import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from acidsim.errors import ConfigError, UnknownScenario
from acidsim.grid import build_grid
from acidsim.harness import sweep as sweepmod
from acidsim.harness.catalog import (
    CATALOG,
    SNAPSHOT_TIMES,
    SweepRange,
    get_scenario,
    scenario_from_items,
    scenario_items,
    scenario_names,
)
from acidsim.harness.cli import bounds_table, main
from acidsim.harness.config import (
    apply_overrides,
    format_config,
    get_bool,
    get_floats,
    load_config,
    parse_config,
    parse_override,
    spec_from_items,
    spec_to_items,
)
from acidsim.harness.patterns import count_interior_maxima
from acidsim.harness.persistence import (
    SNAPSHOT_HEADER,
    SUMMARY_HEADER,
    append_summary,
    format_float,
    read_snapshot,
    read_summary,
    snapshot_filename,
    summary_row,
    write_outcome,
    write_snapshot,
)
from acidsim.harness.runner import default_output_dir, resolve_scenario, run_scenario
from acidsim.harness.sweep import SweepEntry, SweepResult, find_alpha_star
from acidsim.model import Rate, State, paper_coefficients, paper_initial_data
from acidsim.stepper import BLOWUP, COMPLETED, SolverConfig, run

FAST = ["time.T=0.01", "domain.dx=0.25"]


# -- config ---------------------------------------------------------------

SAMPLE = """
# reference setup
domain.dx = 0.05
[model]
alpha = 6.2   # Allee exponent
kernel1 = uniform
reduced = yes
[time]
T = 50
"""


def test_parse_config_sections_and_comments():
    items = parse_config(SAMPLE)
    assert items == {
        "domain.dx": "0.05",
        "model.alpha": "6.2",
        "model.kernel1": "uniform",
        "model.reduced": "yes",
        "time.T": "50",
    }


@pytest.mark.parametrize("text", ["model.colour = red", "[model]\nteta = 1", "[solver]\ndt = 1"])
def test_unknown_keys_rejected(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_malformed_config_rejected():
    with pytest.raises(ConfigError):
        parse_config("[model]\nalpha = 1\nalpha = 2")


def test_format_parse_round_trip(tmp_path):
    items = parse_config(SAMPLE)
    path = tmp_path / "c.cfg"
    path.write_text(format_config(items))
    assert load_config(path) == items


@pytest.mark.parametrize("text, pair", [("model.alpha=3", ("model.alpha", "3")), (" time.T = 1.5 ", ("time.T", "1.5"))])
def test_parse_override(text, pair):
    assert parse_override(text) == pair


@pytest.mark.parametrize("text", ["model.alpha", "=3", "model.zeta=1"])
def test_bad_override(text):
    with pytest.raises(ConfigError):
        parse_override(text)


def test_apply_overrides_does_not_mutate():
    base = {"model.alpha": "2"}
    out = apply_overrides(base, ["model.alpha=3", ("time.T", "1")])
    assert out == {"model.alpha": "3", "time.T": "1"} and base == {"model.alpha": "2"}


def test_typed_accessors():
    assert get_floats({"output.snapshot_times": "0, 10;25,50"}, "output.snapshot_times") == (0, 10, 25, 50)
    assert get_bool({}, "model.reduced") is False
    with pytest.raises(ConfigError):
        get_bool({"model.reduced": "maybe"}, "model.reduced")
    with pytest.raises(ConfigError):
        spec_from_items({"model.alpha": "two"})


def test_spec_round_trip_through_items():
    spec = paper_coefficients(alpha=6.1, beta=10, gamma=0.1, mu1=3).with_(
        mu2=Rate("saturating", 2.5), F_kind="identity", reduced=True
    )
    back = spec_from_items(parse_config(format_config(spec_to_items(spec))))
    assert back == spec


def test_callable_spec_cannot_be_serialized():
    with pytest.raises(ConfigError):
        spec_to_items(paper_coefficients().with_(mu2=lambda h: h))


# -- catalog ----------------------------------------------------------------

def test_catalog_contents():
    names = scenario_names()
    assert len(names) == 43 and len(set(names)) == 43
    assert sum(n.startswith("table1/") for n in names) == 5
    assert sum(n.startswith("table2/") for n in names) == 6
    assert sum(n.startswith("fig6/") for n in names) == 16
    assert get_scenario("fig2/col1").spec.alpha == 2
    assert get_scenario("fig4/col2").spec.reduced
    s = get_scenario("table2/beta10-gamma1-mu1")
    assert (s.spec.beta, s.spec.gamma, s.spec.mu1) == (10, 1, 1)
    assert s.cfg.snapshot_times == SNAPSHOT_TIMES


def test_unknown_scenario():
    with pytest.raises(UnknownScenario):
        get_scenario("table9/none")


@pytest.mark.parametrize("name", ["table1/uniform-uniform", "fig5/col4", "fig6/row2-col4"])
def test_scenario_items_round_trip(name):
    s = get_scenario(name)
    back = scenario_from_items(name, parse_config(format_config(scenario_items(s))))
    assert back.spec == s.spec and back.cfg == s.cfg and back.sweep == s.sweep
    np.testing.assert_array_equal(back.grid.x, s.grid.x)


def test_sweep_range_grid():
    assert SweepRange(2.0, 2.5).grid() == [2.0, 2.1, 2.2, 2.3, 2.4, 2.5]
    assert SweepRange(26.5, 27.6).grid()[-1] == 27.6
    with pytest.raises(ConfigError):
        SweepRange(3.0, 2.0)


def test_resolve_scenario_applies_overrides():
    s, items = resolve_scenario("fig2/col1", ["model.alpha=3.5", *FAST])
    assert s.spec.alpha == 3.5 and s.grid.n_interior == 41 and s.cfg.T_final == 0.01
    assert items["model.alpha"] == "3.5"


# -- patterns -----------------------------------------------------------------

def test_monotone_profile_has_no_maxima():
    assert count_interior_maxima(np.linspace(0, 1, 50), 0.01) == 0
    assert count_interior_maxima(np.full(10, 2.0), 0.01) == 0


def test_single_bump():
    x = np.linspace(-5, 5, 201)
    assert count_interior_maxima(np.exp(-x**2), 0.1) == 1


def test_three_hump_sine():
    x = build_grid(-5.0, 5.0, 0.05).x
    assert count_interior_maxima(np.sin(3 * np.pi * x / 5), 0.5) == 3


def test_prominence_measured_against_neighbouring_minima():
    # ripples each dip only 0.02 deep, so no peak clears a 0.1 prominence
    x = np.linspace(-5, 5, 401)
    f = np.exp(-x**2) + 0.01 * np.sin(40 * x)
    assert count_interior_maxima(f, 0.1) == 0
    assert count_interior_maxima(f, 0.001) > 1


def test_boundary_maximum_not_counted():
    assert count_interior_maxima(np.array([3.0, 2.0, 1.0, 2.0, 0.5]), 0.5) == 1
    assert count_interior_maxima(np.array([3.0, 2.0, 1.0, 0.5]), 0.1) == 0


def test_prominence_must_be_positive():
    with pytest.raises(ValueError):
        count_interior_maxima(np.zeros(5), 0.0)


@settings(max_examples=80)
@given(arrays(float, st.integers(3, 60), elements=st.floats(0, 1)), st.floats(0.01, 1), st.sampled_from([0.25, 0.5, 2.0, 8.0]))
def test_pattern_count_properties(f, prom, scale):
    n = count_interior_maxima(f, prom)
    inner = f[1:-1]
    strict = np.sum((inner > f[:-2]) & (inner > f[2:]))
    assert 0 <= n <= strict
    assert count_interior_maxima(f * scale, prom * scale) == n
    assert count_interior_maxima(f[::-1], prom) == n
    assert count_interior_maxima(f, prom * 2) <= n


# -- persistence ----------------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(arrays(float, (3, 9), elements=st.floats(-1e300, 1e300, allow_nan=False, allow_infinity=False)))
def test_snapshot_round_trip_is_lossless(tmp_path_factory, data):
    g = build_grid(0.0, 1.0, 0.125)
    state = State(g, data[0], data[1], data[2], 1e-4, 7)
    path = write_snapshot(tmp_path_factory.mktemp("snap") / "s.csv", state)
    back = read_snapshot(path)
    assert tuple(back) == SNAPSHOT_HEADER
    for name, arr in zip(("u", "w", "h"), data):
        assert np.array_equal(back[name], arr)
    assert np.array_equal(back["x"], g.x)


@given(st.floats(allow_nan=False))
def test_format_float_is_exact(v):
    assert float(format_float(v)) == v


def test_snapshot_filename():
    assert snapshot_filename(10.0) == "snapshot_t10.csv"
    assert snapshot_filename(0.25) == "snapshot_t0.25.csv"


def test_summary_and_outcome_files(tmp_path):
    out = run(paper_coefficients(), paper_initial_data(), SolverConfig(T_final=0.01, snapshot_times=(0, 0.01)),
              build_grid(-5, 5, 0.25))
    paths = write_outcome(tmp_path, "demo", out)
    names = sorted(p.name for p in paths)
    assert names == ["snapshot_t0.01.csv", "snapshot_t0.csv", "summary.csv"]
    append_summary(tmp_path / "summary.csv", summary_row("again", out))
    rows = read_summary(tmp_path / "summary.csv")
    assert [r["scenario"] for r in rows] == ["demo", "again"]
    assert tuple(rows[0]) == SUMMARY_HEADER
    assert rows[0]["status"] == COMPLETED and rows[0]["blowup_time"] == ""
    assert float(rows[0]["max_u"]) == out.diagnostics.field_max["u"]
    snap = read_snapshot(tmp_path / "snapshot_t0.01.csv")
    assert np.array_equal(snap["u"], out.final_state.u)


# -- runner and sweep --------------------------------------------------------------

def test_default_output_dir():
    assert str(default_output_dir("fig6/row1-col2")) == "runs/fig6_row1-col2"


def test_run_scenario_writes_artifacts(tmp_path):
    out = run_scenario("fig2/col1", FAST, out_dir=tmp_path)
    assert out.status == COMPLETED
    assert (tmp_path / "summary.csv").exists() and (tmp_path / "snapshot_t0.csv").exists()


def test_run_scenario_honours_output_dir_key(tmp_path):
    run_scenario("fig2/col1", [*FAST, f"output.dir={tmp_path / 'x'}"])
    assert (tmp_path / "x" / "summary.csv").exists()


def entry(alpha, status):
    return SweepEntry(alpha, status, 1.0 if status == BLOWUP else None, {}, {})


def fake_runner(threshold, calls, window=None):
    def run_alpha(scenario, alpha):
        calls.append(alpha)
        blow = alpha >= threshold - 1e-9 and not (window and window[0] <= alpha <= window[1])
        return entry(alpha, BLOWUP if blow else COMPLETED)
    return run_alpha


def test_coarse_sweep_refines_first_bracket(monkeypatch):
    calls = []
    monkeypatch.setattr(sweepmod, "run_alpha", fake_runner(4.7, calls))
    res = find_alpha_star(get_scenario("table1/logistic-logistic"))
    assert res.alpha_star == pytest.approx(4.7)
    assert calls[:4] == [2.0, 3.0, 4.0, 5.0]
    assert sorted(calls[4:]) == pytest.approx([4.1, 4.2, 4.3, 4.4, 4.5, 4.6, 4.7])
    assert res.entry(4.6).status == COMPLETED
    assert [a for a, _ in res.statuses] == sorted(a for a, _ in res.statuses)


def test_coarse_sweep_without_blowup(monkeypatch):
    calls = []
    monkeypatch.setattr(sweepmod, "run_alpha", fake_runner(99.0, calls))
    res = find_alpha_star(get_scenario("table1/logistic-uniform"))
    assert res.no_blowup_in_range and res.alpha_star is None
    assert calls == [2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0]


def test_full_sweep_sees_non_monotone_window(monkeypatch):
    calls = []
    monkeypatch.setattr(sweepmod, "run_alpha", fake_runner(26.6, calls, window=(27.0, 27.4)))
    res = find_alpha_star(get_scenario("table2/beta10-gamma1-mu1"), mode="full", alpha_min=26.5, alpha_max=27.6)
    assert len(res.entries) == 12 and res.alpha_star == pytest.approx(26.6)
    assert res.non_monotone()


def test_sweep_result_helpers():
    res = SweepResult("x", (entry(2.0, COMPLETED), entry(2.1, BLOWUP), entry(2.2, BLOWUP)))
    assert res.alpha_star == 2.1 and not res.non_monotone()
    with pytest.raises(KeyError):
        res.entry(3.0)


def test_sweep_argument_errors():
    with pytest.raises(ConfigError):
        find_alpha_star(get_scenario("fig2/col1"))
    with pytest.raises(ConfigError):
        find_alpha_star(get_scenario("table1/logistic-logistic"), mode="dense")
    with pytest.raises(ConfigError):
        find_alpha_star(get_scenario("table1/logistic-logistic"), alpha_min=50)


def test_real_sweep_is_deterministic():
    s, _ = resolve_scenario("table1/logistic-logistic", ["time.T=0.02", "domain.dx=0.25"])
    a = find_alpha_star(s, mode="full", alpha_min=2.0, alpha_max=2.2)
    b = find_alpha_star(s, mode="full", alpha_min=2.0, alpha_max=2.2)
    assert a == b and len(a.entries) == 3


def test_parallel_sweep_matches_serial():
    s, _ = resolve_scenario("table1/logistic-logistic", ["time.T=0.02", "domain.dx=0.25"])
    a = find_alpha_star(s, mode="full", alpha_min=2.0, alpha_max=2.3)
    b = find_alpha_star(s, mode="full", alpha_min=2.0, alpha_max=2.3, workers=2)
    assert a == b


# -- command line ---------------------------------------------------------------

def cli(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_cli_list():
    code, text = cli("list")
    assert code == 0
    lines = text.strip().splitlines()
    assert len(lines) == len(CATALOG)
    assert lines[0].startswith("table1/logistic-logistic\t")


def test_cli_run_completed(tmp_path):
    code, text = cli("run", "--scenario", "fig2/col1", "--set", "time.T=0.01", "--set", "domain.dx=0.25",
                     "--out", str(tmp_path))
    assert code == 0 and "status\tCompleted" in text
    assert (tmp_path / "summary.csv").exists()


def test_cli_run_blowup_exit_code():
    code, text = cli("run", "--scenario", "fig2/col1", "--no-write", "--set", "time.T=0.1",
                     "--set", "domain.dx=0.25", "--set", "model.mu3_tilde=const:1000",
                     "--set", "solver.blowup_threshold=1.5")
    assert code == 2 and "status\tBlowUp" in text


def test_cli_errors(capsys):
    assert cli("run", "--scenario", "nope/none", "--no-write")[0] == 1
    assert "sim: error: no scenario named" in capsys.readouterr().err
    assert cli("run", "--scenario", "fig2/col1", "--set", "model.zeta=1")[0] == 1
    assert cli("frobnicate")[0] == 1
    assert cli("bounds", "--config", "/nonexistent.cfg")[0] == 1


def test_cli_sweep_writes_csv(tmp_path):
    code, text = cli("sweep", "--scenario", "table1/logistic-logistic", "--mode", "full",
                     "--alpha-min", "2", "--alpha-max", "2.1", "--set", "time.T=0.01",
                     "--set", "domain.dx=0.25", "--out", str(tmp_path))
    assert code == 0
    assert "alpha_star\tnone (no blow-up in range)" in text
    assert (tmp_path / "sweep.csv").read_text().splitlines()[0] == "alpha,status,blowup_time"


def test_cli_bounds(tmp_path):
    cfg = tmp_path / "b.cfg"
    cfg.write_text("[model]\nalpha = 1.5\nbeta = 2\n")
    code, text = cli("bounds", "--config", str(cfg))
    rows = dict(line.split("\t") for line in text.strip().splitlines())
    assert code == 0
    assert float(rows["C_S"]) == 20.0
    assert float(rows["C_P"]) == pytest.approx(10 / math.pi)
    assert float(rows["q"]) == 2.5
    assert math.isfinite(float(rows["sup_bound"]))


def test_bounds_table_reference_exponents_not_applicable():
    rows = dict(bounds_table({"model.alpha": "2", "model.beta": "1"}))
    assert rows["sup_bound"].startswith("n/a (")
    assert rows["C_S"] == "20"
