import json
import math

import mpmath
import pytest

import sextic


def test_moments_match_gamma():
    table = sextic.moments(max_order=4, digits=40)
    mu = sextic.column(table, "mu_j")
    with mpmath.workdps(45):
        assert abs(mpmath.mpf(mu[2]) - mpmath.sqrt(mpmath.pi) / 3) < mpmath.mpf("1e-38")
        assert abs(mpmath.mpf(mu[0]) - mpmath.gamma(mpmath.mpf(1) / 6) / 3) < mpmath.mpf("1e-38")
    assert mu[1] == "0"


def test_recurrence_is_consistent():
    table = sextic.recurrence(t1="1", t2="-1", n=10, digits=30)
    with mpmath.workdps(40):
        beta = [mpmath.mpf(v) for v in sextic.column(table, "beta_n")]
        h = [mpmath.mpf(v) for v in sextic.column(table, "h_n")]
        assert beta[0] == 0
        for n in range(1, 11):
            assert beta[n] > 0
            assert abs(beta[n] - h[n] / h[n - 1]) < mpmath.mpf("1e-25") * beta[n]


def test_verify_all_pass():
    result = sextic.verify(n=12, digits=40)
    assert result["all_pass"] is True
    assert [row[0] for row in result["rows"]] == ["dpi", "ladder", "ode", "compat", "pform", "dt2"]


def test_asympt_rows():
    result = sextic.asympt("p", [16, 32], t1="1", t2="1")
    assert len(result["rows"]) == 2
    order = float(sextic.column(result, "fitted_order")[1])
    assert math.isfinite(order)


def test_zeta_prime():
    value = sextic.zeta_prime_neg1(40)
    with mpmath.workdps(50):
        assert abs(mpmath.mpf(value) - mpmath.zeta(-1, derivative=1)) < mpmath.mpf("1e-39")


def test_precision_exhausted_is_raised():
    with pytest.raises(sextic.PrecisionExhausted):
        sextic.recurrence(n=80, digits=15, guard=10)


def test_bad_input_is_value_error():
    with pytest.raises(ValueError):
        sextic.moments(t1="one")


def test_cli_json_roundtrip(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    code, out, err = sextic.run_cli(["moments", "--max-order", "2", "--format", "json"])
    assert code == 0, err
    doc = json.loads(out)
    assert doc["command"] == "moments"
    assert len(doc["rows"]) == 3
    assert json.loads(json.dumps(doc)) == doc
