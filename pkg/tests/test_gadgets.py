import pytest
from hypothesis import given, settings, strategies as st

from tridouble.sim import conversions as cv
from tridouble.sim.gadgets import (STATES, NonCliffordError, ScriptError, SimulationIntegrityError,
                                   conversion_form, parse_script, run_tableau, y_sign)
from tridouble.gf2 import popcount


def test_parse_errors():
    with pytest.raises(ScriptError, match="unknown operation"):
        parse_script("frobnicate A")
    with pytest.raises(ScriptError, match="undeclared block"):
        parse_script("prepare A 0")
    with pytest.raises(ScriptError, match="declared twice"):
        parse_script("block A steane7 0\nblock A steane7 7")
    with pytest.raises(ScriptError, match="takes"):
        parse_script("block A steane7 0\nprepare A")
    with pytest.raises(ScriptError):
        parse_script("block A nosuchcode 0")
    with pytest.raises(ScriptError, match="only 5 declared"):
        parse_script("qubits 5\nblock A steane7 0")
    with pytest.raises(ScriptError, match="cannot condition"):
        parse_script("block A steane7 0\nif m block B steane7 0")


def test_comments_and_blank_lines():
    s = parse_script("# header\n\nblock A steane7 3  # offset\nprepare A +\n")
    assert s.nqubits == 10 and len(s.ops) == 1
    assert str(s) == "prepare A +"


def test_non_clifford_is_rejected_by_name():
    text = "block A rm15 0\nprepare A +\nt A\n"
    s = parse_script(text)
    assert [op.kind for op in s.ops] == ["prepare", "t"]
    with pytest.raises(NonCliffordError, match="line 3.*'t'"):
        run_tableau(s)
    with pytest.raises(NonCliffordError, match="tdg"):
        run_tableau("block A rm15 0\ntdg A\n")


def test_unmeasured_label_and_discarded_block():
    with pytest.raises(ScriptError, match="not measured"):
        run_tableau("block A steane7 0\nif m pauli A X\n")
    with pytest.raises(ScriptError, match="discarded"):
        run_tableau("block A steane7 0\nprepare A 0\nmeasure A Z m\npauli A X\n")


@pytest.mark.parametrize("code", ["steane7", "golay23", "color17", "rm15", "tri49", "tri95"])
@pytest.mark.parametrize("state", STATES)
def test_prepare_every_state(code, state):
    res = run_tableau(f"block A {code} 0\nprepare A {state}\n", seed=3)
    assert res.state("A") == state
    assert res.tableau.check_valid()


def test_golay_zero_measures_zero():
    res = run_tableau("block A golay23 0\nprepare A 0\nmeasure A Z m\n", seed=0)
    assert res.record["m"] == 0
    assert "A" not in res.states


def test_measure_plus_in_z_is_random_but_seeded():
    text = "block A steane7 0\nprepare A +\nmeasure A Z m\n"
    outs = {run_tableau(text, seed=s).record["m"] for s in range(20)}
    assert outs == {0, 1}
    assert run_tableau(text, seed=5).record == run_tableau(text, seed=5).record


def test_transversal_cnot_makes_bell_pair():
    text = ("block A golay23 0\nblock B golay23 23\nprepare A +\nprepare B 0\n"
            "cnot A B\nmeasure A Z a\nmeasure B Z b\n")
    for seed in range(10):
        r = run_tableau(text, seed=seed).record
        assert r["a"] == r["b"]


def test_bell_op():
    text = "block A steane7 0\nblock B steane7 7\nbell A B\nmeasure A X a\nmeasure B X b\n"
    for seed in range(5):
        r = run_tableau(text, seed=seed).record
        assert r["a"] == r["b"]


@pytest.mark.parametrize("state", STATES)
def test_logical_gates(state):
    r = run_tableau(f"block A golay23 0\nprepare A {state}\nh A\nh A\npauli A Y\npauli A Y\n", seed=1)
    assert r.state("A") == state
    r = run_tableau(f"block A golay23 0\nprepare A {state}\nspow A {cv.s_power_for_logical_s('golay23')}\n")
    assert r.state("A") == cv.S_ACTION[state]


def test_y_sign_matches_overlap():
    for name in ("steane7", "golay23", "tri49", "tri95"):
        c = cv.css_for(name)
        assert y_sign(c) == (popcount(c.logical_x.bits & c.logical_z.bits) % 4 == 3)


def test_conversion_forms_share_rows():
    a = conversion_form("tri95", "doubled")
    b = conversion_form("tri95", "extended")
    assert a.n == b.n == 95
    with pytest.raises(ScriptError):
        conversion_form("golay23", "doubled")
    with pytest.raises(ScriptError):
        conversion_form("tri95", "mystery")


@pytest.mark.parametrize("doubled", ["tri49", "tri95"])
@pytest.mark.parametrize("direction", cv.DIRECTIONS)
@pytest.mark.parametrize("state", STATES)
def test_measurement_conversion_preserves_state(doubled, direction, state):
    for seed in range(3):
        run = cv.convert_by_measurement(direction, state, seed=seed, doubled=doubled)
        assert run.output == state
        assert run.result.tableau.check_valid()


@pytest.mark.parametrize("direction", cv.DIRECTIONS)
@pytest.mark.parametrize("state", STATES)
def test_cnot_conversion_preserves_state(direction, state):
    for seed in range(3):
        assert cv.convert_by_cnot(direction, state, seed=seed).output == state


@settings(max_examples=25)
@given(st.sampled_from(cv.DIRECTIONS), st.sampled_from(STATES), st.sampled_from("XYZ"),
       st.lists(st.integers(0, 94), min_size=1, max_size=3, unique=True), st.integers(0, 1000))
def test_measurement_conversion_corrects_shared_errors(direction, state, pauli, support, seed):
    err = f"error D {pauli} {','.join(map(str, support))}\n"
    run = cv.convert_by_measurement(direction, state, seed=seed, errors=err)
    assert run.output == state


@pytest.mark.parametrize("state", STATES)
def test_round_trip_is_identity(state):
    a = cv.convert_by_measurement("sd->doubled", state, seed=1)
    b = cv.convert_by_cnot("doubled->sd", a.output, seed=2)
    assert b.output == state


def test_routes_agree():
    for state in STATES:
        outs = {cv.convert_by_measurement(d, state, seed=4).output for d in cv.DIRECTIONS}
        outs |= {cv.convert_by_cnot(d, state, seed=4).output for d in cv.DIRECTIONS}
        assert outs == {state}


def test_s_powers():
    assert cv.s_power_for_logical_s("tri95") == 3
    assert cv.s_power_for_logical_s("tri49") == 1
    assert cv.s_power_for_logical_s("golay23") == 3
    assert cv.t_power_for_logical_t("tri49") == 1
    assert cv.t_power_for_logical_t("tri95") == 7
    assert cv.s_power_for_logical_s("color17") == 1
    assert cv.s_power_for_logical_s("steane7") == 3


@pytest.mark.parametrize("state", STATES)
def test_t_gadget_with_s_substitute(state):
    for seed in range(4):
        assert cv.t_gadget(state, seed=seed).output == cv.S_ACTION[state]


@pytest.mark.parametrize("state", STATES)
def test_magic_gadget_with_s_substitute(state):
    for seed in range(4):
        assert cv.magic_gadget(state, seed=seed).output == cv.S_ACTION[state]


def test_unsubstituted_gadget_is_rejected():
    with pytest.raises(NonCliffordError):
        run_tableau(cv.t_gadget_script(substitute=False), {"A": "+"})


def test_bad_direction_and_code():
    with pytest.raises(ScriptError):
        cv.measurement_script("up", "tri95")
    with pytest.raises(ScriptError):
        cv.cnot_script("sd->doubled", "golay23")


def test_integrity_check_catches_bad_sign_fix(monkeypatch):
    from tridouble.sim import gadgets

    real = gadgets._pure_errors(conversion_form("tri95", "doubled"))
    broken = {"X": real["X"], "Z": tuple(0 for _ in real["Z"])}
    monkeypatch.setattr(gadgets, "_pure_errors", lambda code: broken)
    text = cv.measurement_script("sd->doubled")
    with pytest.raises(SimulationIntegrityError):
        for seed in range(20):
            run_tableau(text, {"A": "0"}, seed=seed)


def test_trial_seeds_are_deterministic():
    a = [s.entropy for s in cv.trial_seeds(7, 3)]
    assert len(cv.trial_seeds(7, 3)) == 3
    assert [x.spawn_key for x in cv.trial_seeds(7, 3)] == [(0,), (1,), (2,)]
    assert a == [7, 7, 7]
