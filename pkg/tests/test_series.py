import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperradius.algebra import Octonion, Quaternion
from hyperradius.series import (
    RULES,
    SeriesSpec,
    SpecError,
    bound3_partial,
    eval_truncated,
    lemma_aux_domain_check,
    zeta_domain_contains,
    load_series,
    log_sum_exp,
    majorant_degree_term,
    majorant_log_degree_term,
    majorant_log_terms,
    majorant_partial,
    nonzero_slice,
    parse_series,
)

Q = Quaternion(0, 1 / 3, 1 / 3, 1 / 3)
coord = st.floats(min_value=-0.9, max_value=0.9, allow_nan=False)


# parsing


def test_parse_rule_and_table():
    s = parse_series({"label": "sample", "flavor": "quaternion", "source": {"kind": "rule", "name": "factorial"}})
    assert s.label == "sample" and s.coefficient((2, 1, 0)) == Quaternion(6)
    t = parse_series(
        {
            "flavor": "mt",
            "source": {"kind": "table", "entries": [{"nu": [1, 0], "re_components": [0, 1, 0, 0]}]},
        }
    )
    assert t.coefficient((1, 0)) == Quaternion(0, 1) and t.coefficient((0, 1)).is_zero()
    assert t.source.max_degree == 1


@pytest.mark.parametrize("name", sorted(RULES))
@pytest.mark.parametrize("flavor", ["quaternion", "octonion", "mt"])
def test_json_round_trip(name, flavor, tmp_path):
    s = SeriesSpec.rule(name, flavor, label="x")
    path = tmp_path / "s.json"
    path.write_text(json.dumps(s.to_json()))
    back = load_series(path)
    assert back.to_json() == s.to_json()
    for n in range(5):
        nus, logs = nonzero_slice(back.source, n)
        nus0, logs0 = nonzero_slice(s.source, n)
        assert np.array_equal(nus, nus0) and np.array_equal(logs, logs0)


def test_table_round_trip_with_value():
    s = SeriesSpec.table({(1, 0, 0): [1, 2, 3, 4], (0, 2, 1): [0, 0, 0, -1]})
    assert parse_series(s.to_json()).to_json() == s.to_json()
    r = SeriesSpec.rule("constant-unit", value=[0, 1])
    assert parse_series(r.to_json()).coefficient((3, 0, 0)) == Quaternion(0, 1)


@pytest.mark.parametrize(
    "doc,match",
    [
        ([], "JSON object"),
        ({"source": {"kind": "rule", "name": "zero"}}, "flavor"),
        ({"flavor": "spinor", "source": {"kind": "rule", "name": "zero"}}, "flavor"),
        ({"flavor": "quaternion"}, "source"),
        ({"flavor": "quaternion", "source": {"kind": "lambda"}}, "kind"),
        ({"flavor": "quaternion", "source": {"kind": "rule", "name": "bessel"}}, "unknown rule"),
        ({"flavor": "quaternion", "source": {"kind": "rule", "name": "zero", "params": {"tilt": 1}}}, "parameters"),
        ({"flavor": "quaternion", "source": {"kind": "rule", "name": "axis-geometric", "params": {"axis": 4}}}, "axis"),
        ({"flavor": "quaternion", "source": {"kind": "rule", "name": "stirling", "params": {"pattern": [1, 1]}}}, "pattern"),
        ({"flavor": "quaternion", "source": {"kind": "table", "entries": [{"nu": [1, 0, 0]}]}}, "re_components"),
        (
            {"flavor": "quaternion", "source": {"kind": "table", "entries": [{"nu": [1, 0, 0], "re_components": [1, 0]}]}},
            "components",
        ),
        (
            {"flavor": "quaternion", "source": {"kind": "table", "entries": [{"nu": [1, 0], "re_components": [1, 0, 0, 0]}]}},
            "multi-index",
        ),
    ],
)
def test_parse_errors(doc, match):
    with pytest.raises(SpecError, match=match):
        parse_series(doc)


def test_load_errors(tmp_path):
    with pytest.raises(SpecError):
        load_series(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SpecError, match="invalid JSON"):
        load_series(bad)


def test_rule_coefficients():
    assert SeriesSpec.rule("zero").coefficient((1, 0, 0)).is_zero()
    assert SeriesSpec.rule("factorial").coefficient((1, 1, 1)) == Quaternion(6)
    axis = SeriesSpec.rule("axis-geometric", axis=2, ratio=0.5)
    assert axis.coefficient((0, 3, 0)) == Quaternion(0.125 * 6)
    assert axis.coefficient((1, 2, 0)).is_zero()
    p2 = SeriesSpec.rule("power-of-two-support")
    assert p2.coefficient((0, 0, 8)) == Quaternion(40320)
    assert p2.coefficient((0, 0, 6)).is_zero()
    st_ = SeriesSpec.rule("stirling")
    assert st_.coefficient((8, 2, 2)) == Quaternion(math.factorial(12))
    assert st_.coefficient((4, 2, 0)).is_zero()
    assert st_.source.exact_coefficient((8, 2, 2)).c[0] == math.factorial(12)


def test_factorial_overflow_is_reported():
    with pytest.raises(OverflowError):
        SeriesSpec.rule("factorial").coefficient((171, 0, 0))


# majorant


def test_log_sum_exp():
    assert log_sum_exp(np.array([])) == -math.inf
    assert log_sum_exp(np.array([-np.inf, -np.inf])) == -math.inf
    assert log_sum_exp(np.array([1000.0, 1000.0])) == pytest.approx(1000 + math.log(2), rel=1e-15)
    vals = np.log(np.arange(1, 101, dtype=float))
    assert log_sum_exp(vals) == pytest.approx(math.log(5050), rel=1e-15)


def test_sample_series_terms_are_one_at_q():
    s = SeriesSpec.rule("factorial")
    logs = majorant_log_terms(s, Q, 200)
    assert np.abs(logs).max() < 1e-9
    assert majorant_partial(s, Q, 50) == pytest.approx(51, rel=1e-12)
    assert majorant_degree_term(s, Q, 7) == pytest.approx(1, rel=1e-12)


def test_sample_series_terms_inside_the_ball():
    # every |zeta_s| = 0.3 so each degree contributes 0.9^n
    s = SeriesSpec.rule("factorial")
    x = Quaternion(0, 0.3, 0.3, 0.3)
    logs = majorant_log_terms(s, x, 100)
    assert np.allclose(np.diff(logs), math.log(0.9), atol=1e-12)
    assert majorant_partial(s, x, 250) == pytest.approx(10, rel=1e-9)


def test_constant_series_majorant_sums_to_e():
    # a = 1: degree-n term is 3^n (1/3)^n / n! = 1/n!
    s = SeriesSpec.rule("constant-unit")
    assert majorant_partial(s, Q, 30) == pytest.approx(math.e, rel=1e-14)


def test_majorant_at_origin_and_zero_series():
    s = SeriesSpec.rule("constant-unit", value=[0, 3, 4])
    assert majorant_partial(s, Quaternion(), 20) == pytest.approx(5)
    z = SeriesSpec.rule("zero")
    assert majorant_partial(z, Q, 20) == 0.0
    assert majorant_log_degree_term(z, Q, 3) == -math.inf
    assert eval_truncated(z, Q, 10).value.is_zero()


def test_majorant_overflow_gives_inf():
    s = SeriesSpec.rule("factorial")
    assert majorant_partial(s, Quaternion(0, 50, 50, 50), 250) == math.inf


def test_majorant_rejects_bad_input():
    s = SeriesSpec.rule("factorial")
    with pytest.raises(ValueError):
        majorant_log_terms(s, Q, -1)
    with pytest.raises(TypeError):
        majorant_partial(s, Octonion(), 3)
    with pytest.raises(ValueError):
        majorant_partial(SeriesSpec.rule("factorial", "mt"), Quaternion(1), 3)


@settings(max_examples=60, deadline=None)
@given(st.tuples(coord, coord, coord, coord), st.integers(0, 12))
def test_majorant_sandwich(c, N):
    x = Quaternion(*c)
    for s in (SeriesSpec.rule("factorial"), SeriesSpec.rule("constant-unit", value=[1, -1, 2, 0.5])):
        value = eval_truncated(s, x, N).value.norm()
        partial = majorant_partial(s, x, N)
        assert value <= partial * (1 + 1e-12) + 1e-12
        assert partial <= bound3_partial(s, x, N) * (1 + 1e-12) + 1e-12
        assert majorant_partial(s, x, N + 1) >= partial


# evaluation


@settings(max_examples=60, deadline=None)
@given(st.tuples(coord, coord, coord, coord), st.floats(0, 1.2), st.integers(0, 30))
def test_axis_series_matches_complex_geometric_sum(c, ratio, N):
    # a_{n e_1} = ratio^n n! gives sum (ratio zeta_1)^n, and zeta_1 = x1 - i x0 is complex
    x = Quaternion(*c)
    s = SeriesSpec.rule("axis-geometric", ratio=ratio)
    z = ratio * complex(c[1], -c[0])
    want = sum(z**n for n in range(N + 1))
    got = eval_truncated(s, x, N).value
    scale = max(1.0, abs(want))
    assert abs(got.c[0] - want.real) <= 1e-10 * scale
    assert abs(got.c[1] - want.imag) <= 1e-10 * scale
    assert got.c[2] == got.c[3] == 0


def test_axis_series_on_octonion_and_mt():
    x = Octonion(0.2, 0, 0, 0, 0, -0.4)
    s = SeriesSpec.rule("axis-geometric", "octonion", axis=5)
    z = complex(-0.4, -0.2)
    want = sum(z**n for n in range(21))
    got = eval_truncated(s, x, 20).value
    assert got.c[0] == pytest.approx(want.real, abs=1e-12)
    assert got.c[5] == pytest.approx(want.imag, abs=1e-12)
    # xi_2 = v2 + v1 k on mt
    v = Quaternion(0, 0.3, 0.5, 0.1)
    s = SeriesSpec.rule("axis-geometric", "mt", axis=1)
    z = complex(0.5, 0.3)
    got = eval_truncated(s, v, 25).value
    want = sum(z**n for n in range(26))
    assert got.c[0] == pytest.approx(want.real, abs=1e-12)
    assert got.c[3] == pytest.approx(want.imag, abs=1e-12)


def test_coefficients_act_on_the_right():
    x = Quaternion(0.1, 0.2, -0.3, 0.4)
    a = Quaternion(0, 0, 1, 0)
    s = SeriesSpec.table({(1, 0, 0): a.c})
    from hyperradius.fueter import zeta

    assert eval_truncated(s, x, 1).value == zeta(x, 1) * a
    assert eval_truncated(s, x, 1).value != a * zeta(x, 1)


def test_tail_estimate():
    poly = SeriesSpec.table({(1, 0, 0): [1, 0, 0, 0], (0, 2, 0): [0, 1, 0, 0]})
    assert eval_truncated(poly, Q, 5).majorant_tail_estimate == 0
    inside = eval_truncated(SeriesSpec.rule("factorial"), Quaternion(0, 0.3, 0.3, 0.3), 40)
    assert inside.majorant_tail_estimate == pytest.approx(0.9**41 / 0.1, rel=1e-9)
    at_q = eval_truncated(SeriesSpec.rule("constant-unit"), Quaternion(0, 0.5, 0.5, 0.5), 10)
    assert at_q.majorant_tail_estimate > 0
    assert eval_truncated(SeriesSpec.rule("factorial"), Q, 10).majorant_tail_estimate == math.inf


def test_zeta_domain_check():
    h = Quaternion(0.1, 0.5, 0.5, 0.5)
    assert lemma_aux_domain_check(h, Quaternion(0, 0.5, 0.5, 0.5))
    assert zeta_domain_contains(h, h)
    assert not lemma_aux_domain_check(h, Quaternion(0, 0.6, 0, 0))
    v = Quaternion(0, 0.3, 0.4, 0)
    assert lemma_aux_domain_check(v, Quaternion(0, 0, 0.5, 0), "mt")
