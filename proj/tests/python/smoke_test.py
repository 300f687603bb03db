"""Smoke tests for the python extension: thin checks that the bindings wire
through to the same numbers the C++ suites verify in depth."""

import math
import sys

import botbuster as bb


def test_r_function():
    assert math.isclose(bb.r_function(10.0, 10.0), 5.0)
    assert bb.r_function(math.inf, 3.0) == 3.0
    assert bb.r_function(0.0, 4.0) == 0.0
    try:
        bb.r_function(-1.0, 1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("negative rate must raise")


def test_indicators_identity():
    ind = bb.indicators(20, 10, 10.0)
    assert math.isclose(ind.lambda_hat, 2.0)
    assert math.isclose(ind.rho_hat, 1.0)
    assert math.isclose(ind.alpha_hat, 2.0)
    assert math.isclose(bb.r_function(ind.alpha_hat, ind.lambda_hat), ind.rho_hat)
    assert math.isinf(bb.indicators(5, 5, 1.0).alpha_hat)


def test_reference_quantities():
    i1 = bb.indicators(30, 10, 10.0)   # lambda 3, rho 1
    i2 = bb.indicators(20, 15, 10.0)   # lambda 2, rho 1.5
    delta = bb.solve_delta_star(i1, i2)
    assert math.isclose(delta, (4.5 - math.sqrt(13.5)) / 1.5, rel_tol=1e-12)
    sol = bb.reference_quantities(i1, i2, 0.2)
    assert sol.rho_bot < sol.gamma < sol.rho_sum
    assert math.isclose(sol.rho_sum, 2.5)


def test_simulate_detect_roundtrip():
    events, labels = bb.simulate(bots=5, alpha=5.0, normals=5, horizon=240.0, seed=3)
    assert len(labels) == 10
    assert sum(labels) == 5
    assert events == sorted(events, key=lambda e: e[0])

    banned = bb.detect(events, n_users=10, t=240.0, epsilon=0.2)
    assert len(banned) != 1
    for u in banned:
        assert labels[u] == 1  # only true bots at this horizon

    again = bb.detect(events, n_users=10, t=240.0, epsilon=0.2)
    assert banned == again


def test_simulate_deterministic():
    a = bb.simulate(bots=3, normals=2, horizon=30.0, seed=11)
    b = bb.simulate(bots=3, normals=2, horizon=30.0, seed=11)
    assert a == b


def test_evaluate_shapes():
    rep = bb.evaluate(bots=4, alpha=2.0, normals=2, horizon=60.0, seed=1,
                      grid=[30.0, 60.0], epsilon=0.2, trials=3)
    assert rep["grid"] == [30.0, 60.0]
    assert len(rep["eta_bot"]) == 2
    assert len(rep["eta_nor"]) == 2
    assert rep["trials"] == 3
    assert rep["eta_bot"][-1] > 0.5  # low-innovation botnet is easy to find


def test_bic_pair():
    events, _labels = bb.simulate(bots=10, alpha=10.0, horizon=300.0, seed=9)
    res = bb.bic_pair(events, s1=[0, 1, 2, 3, 4], s2=[5, 6, 7, 8, 9], t=300.0, epsilon=0.2)
    assert res["decision"] == "BOTH_BOT"
    assert res["rho_bot"] <= res["gamma"] <= res["rho_sum"]
    try:
        bb.bic_pair(events, s1=[0, 1], s2=[1, 2], t=300.0)
    except ValueError:
        pass
    else:
        raise AssertionError("overlapping subnets must raise")


def test_trace_io_roundtrip(tmp_path="/tmp"):
    import os

    events, _ = bb.simulate(bots=2, normals=2, horizon=20.0, seed=4)
    path = os.path.join(tmp_path, f"bb_smoke_{os.getpid()}.csv")
    try:
        bb.write_trace(path, events)
        assert bb.read_trace(path) == events
    finally:
        os.unlink(path)


def test_recursion_oracle():
    f = bb.recurse(1.0, 1.0, 2.0, f0=0.0, n_max=1000)
    assert math.isclose(f[0], 1.0)
    assert math.isclose(f[-1], bb.closed_form(1.0, 1.0, 2.0, 0.0, 1000), rel_tol=1e-10)
    assert math.isclose(bb.limit_slope(1.0, 1.0), 0.5)


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
