"""Smoke test for the qsub_thermo_py extension module."""

import math

import qsub_thermo_py as qt


def main() -> None:
    hot_a = qt.ThermalPreparation(0.5, 1.0)

    rwa = qt.OscillatorSystem(1.0, kind="rwa", g=0.1)
    report = qt.heat_at(rwa, hot_a, 3.0)
    assert report.dq_ab > 0 and report.csl_ok, report
    assert math.isclose(report.dq_a, -report.dq_b, rel_tol=1e-12)
    assert report.ds0 >= 0

    cold = qt.ThermalPreparation(2.0, 3.0)
    sim = qt.FockSimulation(rwa, cold)
    oracle = sim.heat_report(3.0)
    exact = qt.heat_at(rwa, cold, 3.0)
    assert abs(oracle.dq_ab - exact.dq_ab) < 1e-8 * abs(exact.dq_ab), (oracle, exact)
    value, exponent = sim.jarzynski(3.0)
    assert abs(value - 1.0) < 1e-10 and abs(exponent + oracle.ds0) < 1e-10

    linear = qt.OscillatorSystem(1.0, kind="linear", g=0.51)
    averages = qt.time_averages(linear, hot_a, [10.0, 50.0])
    assert averages[1] < 0, averages
    profile = qt.scan_violations(linear, hot_a, 50.0, 501)
    assert profile.classification == "persistent", profile.classification

    audit = qt.decomposition_audit(qt.OscillatorSystem(1.0, kind="linear", g=0.2), 12)
    assert not audit.csl_safe and audit.norm_h0_v > 0
    assert qt.decomposition_audit(rwa, 12).csl_safe

    verdict = qt.csl_check(1.0, -0.1, hot_a)
    assert not verdict.compliant and verdict.margin < 0

    try:
        qt.heat_at(qt.OscillatorSystem(1.0, kind="linear", g=0.5), hot_a, 1.0)
    except qt.SingularError:
        pass
    else:
        raise AssertionError("g = omega/2 must be singular")
    try:
        qt.heat_at(qt.OscillatorSystem(1.0, kind="minimal-a"), hot_a, 1.0)
    except NotImplementedError:
        pass
    else:
        raise AssertionError("minimal coupling has no closed form")
    try:
        qt.ThermalPreparation(-1.0, 1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("negative beta must be rejected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
