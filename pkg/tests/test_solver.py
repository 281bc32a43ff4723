import numpy as np
import pytest

from rsdesitter import radial, solver
from rsdesitter.ansatz import ModeLabel


def _system(j=0.5, eps=1.3, mass=0.7, delta=1):
    mode = ModeLabel(j=j, m_j=0.5, eps=eps, mass=mass, delta=delta)
    return radial.RadialSystem(mode=mode, dimension=8), radial.ConstraintSet(mode=mode)


def test_frobenius_residues_match_closed_forms():
    system, _ = _system()
    for endpoint in ("origin", "horizon"):
        data = solver.frobenius(system, endpoint)
        assert np.abs(data.residue - system.residue(endpoint)).max() < 1e-10
        assert data.eigen_residuals.max() < 1e-10
        # exponents sorted by descending real part
        assert np.all(np.diff(data.exponents.real) < 1e-12)


def test_origin_exponents_minimal_j():
    system, _ = _system()
    data = solver.frobenius(system, "origin")
    # couplings of strength a = 1 produce integer exponents +-1, +-2
    expected = np.array([2.0, 1.0, 1.0, 0.0, 0.0, -1.0, -1.0, -2.0])
    assert np.abs(np.sort(data.exponents.real)[::-1] - expected).max() < 1e-9
    assert np.abs(data.exponents.imag).max() < 1e-9


def test_horizon_exponents_carry_energy_shifts():
    system, _ = _system(eps=1.3)
    data = solver.frobenius(system, "horizon")
    imags = np.sort(data.exponents.imag)
    assert np.abs(imags[:4] + 1.3).max() < 1e-9
    assert np.abs(imags[4:] - 1.3).max() < 1e-9


def test_static_massless_exponents_real():
    system, _ = _system(eps=0.0, mass=0.0)
    data = solver.frobenius(system, "origin")
    assert np.abs(data.exponents.imag).max() < 1e-10
    assert np.abs(data.residue.imag).max() < 1e-12


def test_zero_initial_state_stays_zero():
    system, cons = _system()
    trace = solver.integrate(system, cons, 0.3, 1.2, np.zeros(8, dtype=complex), tol=1e-10)
    assert np.abs(trace.states).max() == 0.0
    assert np.abs(trace.residuals).max() == 0.0


def test_linearity_of_the_flow():
    system, cons = _system()
    rng = np.random.default_rng(0)
    y0 = solver.constraint_kernel_state(cons, 0.3, rng.standard_normal(8) + 0j, zero_slots=(1, 7))
    t1 = solver.integrate(system, cons, 0.3, 1.2, y0, tol=1e-11)
    t2 = solver.integrate(system, cons, 0.3, 1.2, 2.0 * y0, tol=1e-11)
    mid = 0.777
    assert np.abs(t2.evaluate(mid) - 2.0 * t1.evaluate(mid)).max() < 1e-8


def test_constraint_drift_stays_small():
    system, cons = _system()
    rng = np.random.default_rng(1)
    seed = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    y0 = solver.constraint_kernel_state(cons, 0.3, seed, zero_slots=(1, 7))
    trace = solver.integrate(system, cons, 0.3, 1.2, y0, tol=1e-10)
    assert trace.residuals.max() < 1e-7
    reference = solver.integrate(system, cons, 0.3, 1.2, y0, tol=1e-13)
    assert np.abs(trace.states[-1] - reference.states[-1]).max() < 1e-8


def test_trace_structure():
    system, cons = _system()
    y0 = np.ones(8, dtype=complex)
    trace = solver.integrate(system, cons, 0.4, 1.0, y0, tol=1e-9)
    assert np.all(np.diff(trace.omegas) > 0)
    assert np.all(np.isfinite(trace.states))
    assert np.all(trace.residuals >= 0.0)
    assert trace.n_steps == len(trace.omegas) - 1
    with pytest.raises(ValueError):
        trace.evaluate(1.4)


def test_dense_output_accuracy():
    system, _ = _system()
    rng = np.random.default_rng(5)
    y0 = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    trace = solver.integrate(system, None, 0.3, 1.2, y0, tol=1e-10)
    mid = 0.81234
    direct = solver.integrate(system, None, 0.3, mid, y0, tol=1e-13)
    assert np.abs(trace.evaluate(mid) - direct.states[-1]).max() < 1e-8


def test_singularity_near_horizon_raises_with_partial_trace():
    system, _ = _system()
    with pytest.raises(solver.SingularityError) as info:
        solver.integrate(system, None, 0.5, np.pi / 2 - 1e-13, np.ones(8, dtype=complex), tol=1e-10)
    assert info.value.trace is not None
    assert len(info.value.trace.omegas) > 10


def test_max_steps_diagnostic():
    system, _ = _system()
    with pytest.raises(solver.ToleranceError):
        solver.integrate(
            system, None, 0.3, 1.2, np.ones(8, dtype=complex), tol=1e-10, max_steps=3
        )


def test_endpoint_launch_scaling_consistency():
    # launching closer in and integrating outward reproduces the direct
    # launch with an O(offset^2) relative error
    system, _ = _system()
    u0 = 1e-3
    for endpoint, index in (("horizon", 0), ("origin", 0)):
        data = solver.frobenius(system, endpoint)
        near = solver.endpoint_launch(system, data, index, offset=u0 / 2)
        far = solver.endpoint_launch(system, data, index, offset=u0)
        trace = solver.integrate(system, None, near.omega, far.omega, near.state, tol=1e-13)
        rel = np.abs(trace.states[-1] - far.state).max() / np.abs(far.state).max()
        assert rel < 50.0 * u0**2, (endpoint, rel)


def test_endpoint_launch_zero_vector_gives_zero_state():
    system, _ = _system()
    data = solver.frobenius(system, "origin")
    zeroed = solver.IndicialData(
        endpoint=data.endpoint,
        direction=data.direction,
        residue=data.residue,
        subleading=data.subleading,
        exponents=data.exponents,
        vectors=np.zeros_like(data.vectors),
        eigen_residuals=data.eigen_residuals,
    )
    launch = solver.endpoint_launch(system, zeroed, 0, offset=1e-3)
    assert np.abs(launch.state).max() == 0.0


def test_endpoint_launch_constraint_compatible_subspace():
    system, cons = _system()
    data = solver.frobenius(system, "origin")
    # the unit-exponent eigenvectors at minimal j include a
    # constraint-compatible direction
    zero_idx = [k for k in data.regular_indices() if abs(data.exponents[k]) < 1e-8]
    assert zero_idx
    launch = solver.endpoint_launch(system, data, zero_idx[0], offset=1e-3)
    resid = np.abs(cons.matrix(launch.omega) @ launch.state).max()
    assert resid < 1e-8 * np.abs(launch.state).max()


def test_endpoint_launch_rejects_decaying_origin_exponent():
    system, _ = _system()
    data = solver.frobenius(system, "origin")
    falling = int(np.argmin(data.exponents.real))
    with pytest.raises(ValueError):
        solver.endpoint_launch(system, data, falling, offset=1e-3)


def test_resonant_launch_flagged():
    system, _ = _system()
    data = solver.frobenius(system, "origin")
    # exponent 1 has exponent+1 = 2 in the spectrum
    idx = int(np.argmin(np.abs(data.exponents - 1.0)))
    launch = solver.endpoint_launch(system, data, idx, offset=1e-3)
    assert launch.resonant


def test_effective_convergence_order():
    system, _ = _system()
    rng = np.random.default_rng(9)
    y0 = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    reference = solver.integrate(system, None, 0.3, 1.2, y0, tol=1e-13)
    errs, steps = [], []
    for tol in (1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10):
        trace = solver.integrate(system, None, 0.3, 1.2, y0, tol=tol)
        errs.append(np.abs(trace.states[-1] - reference.states[-1]).max())
        steps.append(0.9 / trace.n_steps)
    slope = np.polyfit(np.log(steps), np.log(errs), 1)[0]
    assert slope >= 4.0


def test_integrate_validation():
    system, _ = _system()
    with pytest.raises(ValueError):
        solver.integrate(system, None, 0.0, 1.0, np.ones(8, dtype=complex))
    with pytest.raises(ValueError):
        solver.integrate(system, None, 0.3, 1.0, np.ones(4, dtype=complex))
    with pytest.raises(ValueError):
        solver.frobenius(system, "middle")
