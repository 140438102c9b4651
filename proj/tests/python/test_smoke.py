"""Smoke tests for the python bindings."""

import math

import emflow


def approx(a, b, rel=1e-12):
    return abs(a - b) <= rel * max(abs(a), abs(b), 1e-300)


def main():
    params = emflow.PhysicalParams(mu=4e-7 * math.pi, sigma=7.21e6, u_z=10.0)
    field = emflow.AppliedField(a=8.0, b=12.0, B=1.0, L=20.0)

    pe = emflow.peclet(params, 0.25)
    assert approx(pe, params.mu * params.sigma * params.u_z * 0.25 / 2)
    rm = emflow.magnetic_reynolds(params, 0.517)
    assert approx(emflow.peclet(params, 0.25), rm * 0.25 / (2 * 0.517), rel=1e-12)

    assert emflow.applied_field_eval(field, 10.0) == 1.0
    assert emflow.applied_field_eval(field, 1.0) == 0.0
    assert approx(emflow.source_potential_eval(field, 12.0), -4.0)

    # 1D solve against the closed-form oracle
    mesh = emflow.Mesh1D(dz=0.25, n_nodes=81, order=1)
    mode = emflow.InputMode.vector_potential
    params3000 = emflow.PhysicalParams(
        mu=4e-7 * math.pi, sigma=7.21e6, u_z=2 * 3000.0 / (4e-7 * math.pi * 7.21e6 * 0.25)
    )
    sol = emflow.solve_1d(mesh, params3000, field, mode)
    oracle = emflow.closed_form_samples(mesh, field, params3000, mode)
    scale = max(abs(v) for v in oracle)
    assert max(abs(a - b) for a, b in zip(sol.a_y, oracle)) < 1e-9 * scale
    assert len(sol.b_x) == len(sol.a_y) - 1

    # amplitude formulas and the z-domain view
    assert emflow.oscillation_amplitude_asy(3.0, 1.0) == -0.125
    tf = emflow.transfer_function(3.0, 0.25, emflow.InputMode.flux_density)
    assert [p.real for p in tf.poles] == [1.0, -2.0]
    rep = emflow.stability_report(
        emflow.transfer_function(3000.0, 0.25, emflow.InputMode.vector_potential), 3000.0
    )
    assert rep.classification == emflow.StabilityClass.cancelled
    assert approx(rep.cancellation_residual, 2.0 / 2999.0)

    # small 2D channel solve
    geom = emflow.ChannelGeometry(d=0.1, window_a=0.4, window_b=0.6)
    sol2d = emflow.solve_2d_channel(geom, params, B=1.0, target_pe=0.7)
    assert emflow.net_current_metric(sol2d, params, 0.5) < 1e-6
    assert 0.0 < emflow.downstream_decay_metric(sol2d) < 1.0
    line = emflow.centerline_profile(sol2d)
    assert len(line) == len(sol2d.z)

    print("python smoke tests passed")


if __name__ == "__main__":
    main()
