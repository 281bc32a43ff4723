import numpy as np
import pytest

from rsdesitter import algebra, ansatz, radial
from rsdesitter.ansatz import ModeLabel
from rsdesitter.wigner import wigner_D

JS = (0.5, 1.5, 2.5)


def _mode(j, **kw):
    kw.setdefault("m_j", 0.5)
    kw.setdefault("eps", 1.3)
    kw.setdefault("mass", 0.7)
    return ModeLabel(j=j, **kw)


def test_mode_label_validation():
    with pytest.raises(ValueError):
        ModeLabel(j=1.0, m_j=0.5)
    with pytest.raises(ValueError):
        ModeLabel(j=0.5, m_j=1.5)
    with pytest.raises(ValueError):
        ModeLabel(j=0.5, m_j=0.5, delta=2)


def test_assemble_zero_state():
    mode = _mode(1.5)
    out = ansatz.assemble(mode, np.zeros(16, dtype=complex), 0.9, 0.3)
    assert np.abs(out).max() == 0.0


def test_assemble_single_amplitude():
    mode = _mode(1.5)
    state = np.zeros(16, dtype=complex)
    state[0] = 1.0
    out = ansatz.assemble(mode, state, 0.9, 0.3)
    assert np.count_nonzero(out) == 1
    assert abs(out[0] - wigner_D(1.5, 0.5, -0.5, 0.9, 0.3)) < 1e-15


def test_minimal_j_rejects_forbidden_amplitudes():
    mode = _mode(0.5)
    state = np.zeros(16, dtype=complex)
    state[1] = 1.0  # the |sigma| = 3/2 slot next to f0
    with pytest.raises(ValueError):
        ansatz.assemble(mode, state, 0.9, 0.3)


def test_forced_zero_slots_minimal_j():
    mode = _mode(0.5)
    assert list(ansatz.forced_zero_slots(mode)) == [1, 7, 9, 15]
    assert list(ansatz.forced_zero_slots(_mode(1.5))) == []


def test_ladder_action_random_states():
    rng = np.random.default_rng(42)
    for j in JS:
        mode = _mode(j)
        for _ in range(10):
            state = ansatz.random_state(mode, rng)
            theta = rng.uniform(0.25, np.pi - 0.25)
            phi = rng.uniform(0.0, 2 * np.pi)
            res = ansatz.verify_T_action(mode, state, theta, phi)
            assert max(res.values()) < 1e-12, (j, res)


def test_ladder_action_single_g2():
    mode = _mode(1.5)
    state = np.zeros(16, dtype=complex)
    state[6] = 1.0  # g2
    theta, phi = 0.8, 0.4
    m25, m26 = ansatz._t_matrices()
    out = (m25 + m26) @ ansatz.assemble(mode, state, theta, phi)[:8]
    expected = np.zeros(8, dtype=complex)
    expected[3] = 1j * np.sqrt(2.0) * wigner_D(1.5, 0.5, 0.5, theta, phi)
    assert np.abs(out - expected).max() < 1e-14


def test_ladder_action_zero_state():
    mode = _mode(1.5)
    res = ansatz.verify_T_action(mode, np.zeros(16, dtype=complex), 0.9, 0.1)
    assert max(res.values()) == 0.0


def test_boost_action():
    rng = np.random.default_rng(9)
    for j in JS:
        mode = _mode(j)
        for _ in range(5):
            state = ansatz.random_state(mode, rng)
            res = ansatz.verify_j03_action(mode, state, 1.0, 0.7, omega=0.9)
            assert res < 1e-12

    # single-amplitude structure: f0 feeds the spin-0 slot, f1 is annihilated
    mode = _mode(1.5)
    state = np.zeros(16, dtype=complex)
    state[0] = 1.0
    mat = np.kron(np.eye(2), algebra.tilde_generator(0, 3))
    out = mat @ ansatz.assemble(mode, state, 0.8, 0.2)[:8]
    assert np.count_nonzero(np.abs(out) > 1e-15) == 1
    assert abs(out[2]) > 0.0
    state = np.zeros(16, dtype=complex)
    state[1] = 1.0
    out = mat @ ansatz.assemble(mode, state, 0.8, 0.2)[:8]
    assert np.abs(out).max() == 0.0


def test_angular_operator_random_states():
    rng = np.random.default_rng(5)
    for j in JS:
        mode = _mode(j)
        for _ in range(10):
            state = ansatz.random_state(mode, rng)
            theta = rng.uniform(0.25, np.pi - 0.25)
            phi = rng.uniform(0.0, 2 * np.pi)
            assert ansatz.verify_angular_operator(mode, state, theta, phi) < 1e-9


def test_angular_operator_minimal_j_single_g0():
    mode = _mode(0.5)
    state = np.zeros(16, dtype=complex)
    state[4] = 2.0  # g0
    theta, phi = 0.9, 0.3
    out = ansatz._angular_action_block(mode, state, theta, phi)
    expected = np.zeros(8, dtype=complex)
    # a = 1 at minimal j
    expected[0] = 1j * 1.0 * 2.0 * wigner_D(0.5, 0.5, -0.5, theta, phi)
    assert np.abs(out - expected).max() < 1e-14


def test_angular_operator_uses_b_at_higher_j():
    mode = _mode(2.5)
    state = np.zeros(16, dtype=complex)
    state[1] = 1.0  # f1
    theta, phi = 1.1, 0.6
    out = ansatz._angular_action_block(mode, state, theta, phi)
    b = mode.coefficients().b
    expected = np.zeros(8, dtype=complex)
    expected[5] = -1j * b * wigner_D(2.5, 0.5, -0.5, theta, phi)
    assert np.abs(out - expected).max() < 1e-13


def test_radial_derivative_slot_pattern():
    mode = _mode(1.5)
    rng = np.random.default_rng(3)
    deriv = ansatz.random_state(mode, rng)
    assert ansatz.verify_radial_derivative(mode, deriv, 1.0, 0.2) < 1e-14


def test_trace_constraint_iff():
    rng = np.random.default_rng(12)
    mode = _mode(1.5)
    s2 = np.sqrt(2.0)

    state = ansatz.random_state(mode, rng)
    state[0] = s2 * state[5] - state[2]
    state[4] = state[6] - s2 * state[3]
    state[8] = state[10] - s2 * state[13]
    state[12] = s2 * state[11] - state[14]
    chk = ansatz.verify_trace_constraint(mode, state, 0.9, 1.2)
    assert chk.field_residual < 1e-13
    assert np.abs(chk.relations).max() < 1e-13

    generic = ansatz.random_state(mode, rng)
    chk2 = ansatz.verify_trace_constraint(mode, generic, 0.9, 1.2)
    assert chk2.field_residual > 1e-3
    assert chk2.consistency < 1e-13  # contraction always collapses to the relations


def test_trace_constraint_parity_restricted():
    # under the inversion restrictions the eta relations repeat the xi ones
    rng = np.random.default_rng(1)
    for delta in (1, -1):
        mode = _mode(1.5, delta=delta)
        y = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        state = radial.parity_embed(delta) @ y
        chk = ansatz.verify_trace_constraint(mode, state, 1.0, 0.5)
        assert abs(chk.relations[2] - delta * chk.relations[1]) < 1e-13
        assert abs(chk.relations[3] - delta * chk.relations[0]) < 1e-13


def test_divergence_assembly_random_data():
    rng = np.random.default_rng(21)
    for j in JS:
        mode = _mode(j)
        state = ansatz.random_state(mode, rng)
        dstate = ansatz.random_state(mode, rng)
        chk = ansatz.verify_divergence_constraint(mode, state, dstate, 0.7, 0.9, 1.1)
        assert chk.collapse_residual < 1e-8
        assert chk.residual < 1e-8
        # the transcription without the radial-slope term fails by O(1)
        assert chk.printed_variant_residual > 1e-2


def test_divergence_satisfied_component_vanishes():
    mode = _mode(1.5)
    rng = np.random.default_rng(30)
    state = ansatz.random_state(mode, rng)
    dstate = ansatz.random_state(mode, rng)
    # solve the first relation for the f2 derivative slot
    rel = ansatz.divergence_relations(mode, state, dstate, 0.7)
    dstate = dstate.copy()
    dstate[2] += rel[0]
    chk = ansatz.verify_divergence_constraint(mode, state, dstate, 0.7, 0.9, 1.1)
    assert abs(chk.relations[0]) < 1e-8
    assert abs(chk.closed_form[0]) < 1e-14


def test_divergence_parity_reduction():
    # restricted data leaves two independent relations
    for delta in (1, -1):
        mode = _mode(1.5, delta=delta)
        rng = np.random.default_rng(17)
        y = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        dy = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        emb = radial.parity_embed(delta)
        rel = ansatz.divergence_relations(mode, emb @ y, emb @ dy, 0.8)
        assert abs(rel[2] - delta * rel[1]) < 1e-13
        assert abs(rel[3] - delta * rel[0]) < 1e-13


def test_inversion_field_identity():
    rng = np.random.default_rng(4)
    for j in (0.5, 1.5):
        mode = _mode(j)
        state = ansatz.random_state(mode, rng)
        theta, phi = 0.8, 0.3
        lhs = ansatz.apply_inversion(mode, state, theta, phi)
        rhs = ansatz.inversion_phase(mode) * ansatz.assemble(
            mode, ansatz.parity_image(mode, state), theta, phi
        )
        assert np.abs(lhs - rhs).max() < 1e-14


def test_embedded_states_are_inversion_eigenstates():
    rng = np.random.default_rng(6)
    for delta in (1, -1):
        mode = _mode(1.5, delta=delta)
        y = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        state = radial.parity_embed(delta) @ y
        image = ansatz.parity_image(mode, state)
        assert np.abs(image - delta * state).max() < 1e-14
        # and at the field level, with the accompanying phase
        theta, phi = 1.1, 0.9
        lhs = ansatz.apply_inversion(mode, state, theta, phi)
        parity = delta * ansatz.inversion_phase(mode)
        rhs = parity * ansatz.assemble(mode, state, theta, phi)
        assert np.abs(lhs - rhs).max() < 1e-13


def test_operator_closure_no_leakage():
    # each operator term keeps assembled states inside the sixteen slots
    rng = np.random.default_rng(55)
    thetas, phis = ansatz.projection_angles(8)
    for j in JS:
        mode = _mode(j)
        state = ansatz.random_state(mode, rng)
        m25, m26 = ansatz._t_matrices()
        samples = np.zeros((16, len(thetas)), dtype=complex)
        for n, (th, ph) in enumerate(zip(thetas, phis)):
            field = ansatz.assemble(mode, state, th, ph)
            upper = (m25 + m26) @ field[:8]
            samples[:8, n] = upper
            samples[8:, n] = ansatz._angular_action_block(mode, state, th, ph)
        _, leak = ansatz.project_to_amplitudes(mode, samples, thetas, phis)
        assert leak < 1e-9
