import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rsdesitter import ansatz, radial
from rsdesitter.ansatz import ModeLabel

FORBIDDEN_MIN_J = (1, 7, 9, 15)


def _mode(j=1.5, eps=1.3, mass=0.7, delta=None):
    return ModeLabel(j=j, m_j=0.5, eps=eps, mass=mass, delta=delta)


def test_energy_diagonal_entry():
    omega = 0.7
    a16 = radial.build_A16(_mode(), omega)
    assert abs(a16[0, 0] - 1j * 1.3 / np.cos(omega)) < 1e-15


def test_massless_blocks_decouple():
    a16 = radial.build_A16(_mode(mass=0.0), 0.9)
    assert np.abs(a16[:8, 8:]).max() == 0.0
    assert np.abs(a16[8:, :8]).max() == 0.0
    coupled = radial.build_A16(_mode(mass=0.5), 0.9)
    assert np.abs(coupled[:8, 8:]).max() > 0.0


def test_minimal_j_forbidden_slots_decouple():
    a16 = radial.build_A16(_mode(j=0.5), 0.8)
    admissible = [k for k in range(16) if k not in FORBIDDEN_MIN_J]
    assert np.abs(a16[np.ix_(admissible, FORBIDDEN_MIN_J)]).max() == 0.0
    assert np.abs(a16[np.ix_(FORBIDDEN_MIN_J, admissible)]).max() == 0.0


def test_parity_embed_columns():
    emb = radial.parity_embed(+1)
    e_f0 = emb @ np.eye(8)[0]
    expected = np.zeros(16)
    expected[0] = expected[12] = 1.0  # f0 and nu0
    assert np.array_equal(e_f0, expected)
    # columns orthogonal with norm sqrt(2)
    gram = emb.T @ emb
    assert np.abs(gram - 2.0 * np.eye(8)).max() == 0.0
    # delta only flips the dependent rows
    diff = radial.parity_embed(+1) - radial.parity_embed(-1)
    assert np.abs(diff[:8]).max() == 0.0
    assert np.abs(diff[8:]).max() == 2.0


def test_embedded_states_eigenvectors_of_amplitude_parity():
    m = radial.amplitude_parity_matrix()
    assert np.array_equal(m @ m, np.eye(16))
    rng = np.random.default_rng(2)
    for delta in (1, -1):
        y = rng.standard_normal(8)
        x = radial.parity_embed(delta) @ y
        assert np.abs(m @ x - delta * x).max() == 0.0


@given(
    j=st.sampled_from([0.5, 1.5, 2.5]),
    omega=st.floats(0.05, 1.5),
    eps=st.floats(-3.0, 3.0),
    mass=st.floats(0.0, 3.0),
    delta=st.sampled_from([1, -1]),
)
@settings(max_examples=60, deadline=None)
def test_reduction_exactness(j, omega, eps, mass, delta):
    mode = _mode(j=j, eps=eps, mass=mass, delta=delta)
    a16 = radial.build_A16(mode, omega)
    a8 = radial.build_A8(mode, omega)
    emb = radial.parity_embed(delta)
    assert np.abs(a16 @ emb - emb @ a8).max() < 1e-13


def test_parity_mass_duality_exact():
    for j in (0.5, 1.5, 2.5):
        flipped = radial.build_A8(_mode(j=j, mass=0.7, delta=-1), 0.6)
        negated = radial.build_A8(_mode(j=j, mass=-0.7, delta=+1), 0.6)
        assert np.array_equal(flipped, negated)


def test_reduced_system_spot_entries():
    # entries of the reduced system, rearranged for the derivatives
    mode = _mode(j=1.5, eps=1.1, mass=0.4, delta=+1)
    omega = 0.8
    a8 = radial.build_A8(mode, omega)
    e = 1.1 / np.cos(omega)
    b = mode.coefficients().b
    a = mode.coefficients().a
    s, t = np.sin(omega), np.tan(omega)
    assert abs(a8[0, 0] - 1j * e) < 1e-15
    assert abs(a8[0, 2] + t) < 1e-15
    assert abs(a8[0, 4] - (-a / s - 1j * 0.4)) < 1e-15
    assert abs(a8[5, 2] + np.sqrt(2.0) / t) < 1e-15
    assert abs(a8[5, 1] + b / s) < 1e-15
    assert abs(a8[7, 3] + b / s) < 1e-15
    assert abs(a8[7, 1] - 1j * 0.4) < 1e-15


def test_minimal_j_reduces_to_six_equations():
    mode = _mode(j=0.5, delta=+1)
    a8 = radial.build_A8(mode, 0.7)
    admissible = [0, 2, 3, 4, 5, 6]
    forbidden = [1, 7]
    assert np.abs(a8[np.ix_(admissible, forbidden)]).max() == 0.0
    assert np.abs(a8[np.ix_(forbidden, admissible)]).max() == 0.0


def test_angular_extraction_matches_hand_coded():
    for j in (1.5, 2.5):
        mode = _mode(j=j)
        for omega in (0.3, 0.8, 1.3):
            ext = radial.assemble_from_angular(mode, omega)
            hand = radial.build_A16(mode, omega)
            assert np.abs(ext - hand).max() < 1e-10, (j, omega)


def test_angular_extraction_minimal_j():
    mode = _mode(j=0.5)
    ext = radial.assemble_from_angular(mode, 0.7)
    hand = radial.build_A16(mode, 0.7)
    admissible = [k for k in range(16) if k not in FORBIDDEN_MIN_J]
    assert np.abs(ext[:, admissible] - hand[:, admissible]).max() < 1e-10
    # nothing can feed the slots that do not exist at this j
    assert np.abs(ext[np.ix_(FORBIDDEN_MIN_J, admissible)]).max() == 0.0


def test_angular_extraction_adjudicates_disputed_slots():
    # the two coefficient slots with conflicting printed transcriptions
    mode = _mode(j=1.5)
    omega = 0.9
    ext = radial.assemble_from_angular(mode, omega)
    a = mode.coefficients().a
    s, t = np.sin(omega), np.tan(omega)
    # first row: the angular ladder couples f0' to g0, not to g3
    assert abs(ext[0, 4] + a / s) < 1e-10
    assert abs(ext[0, 7]) < 1e-10
    # g2 row: the spin-0 ladder couples to f3; f2 appears once, with a/sin
    assert abs(ext[6, 3] + np.sqrt(2.0) / t) < 1e-10
    assert abs(ext[6, 2] + a / s) < 1e-10


def test_constraint_rows_algebraic_part():
    mode = _mode(j=1.5, delta=+1)
    c = radial.constraint_matrix(mode, 0.8)
    rng = np.random.default_rng(3)
    y = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    y[5] = (y[0] + y[2]) / np.sqrt(2.0)  # g1 from f0, f2
    y[3] = (y[6] - y[4]) / np.sqrt(2.0)  # f3 from g2, g0
    assert abs(c[0] @ y) < 1e-14
    assert abs(c[1] @ y) < 1e-14
    assert np.abs(c @ np.zeros(8)).max() == 0.0


def test_constraint_rows_match_divergence_relations():
    # substitution oracle: eliminate the derivative through the flow and
    # compare against the assembled divergence relation
    rng = np.random.default_rng(14)
    for delta in (1, -1):
        mode = _mode(j=1.5, delta=delta)
        omega = 0.75
        y = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        emb = radial.parity_embed(delta)
        state = emb @ y
        dstate = emb @ (radial.build_A8(mode, omega) @ y)
        rel = ansatz.divergence_relations(mode, state, dstate, omega)
        c = radial.constraint_matrix(mode, omega)
        assert abs(c[2] @ y - rel[0]) < 1e-12
        assert abs(c[3] @ y - rel[1]) < 1e-12


def test_constraint_derivative_is_exact():
    mode = _mode(j=1.5, delta=+1)
    h = 1e-6
    dc = radial.constraint_matrix_derivative(mode, 0.8)
    fd = (radial.constraint_matrix(mode, 0.8 + h) - radial.constraint_matrix(mode, 0.8 - h)) / (2 * h)
    assert np.abs(dc - fd).max() < 1e-7


def test_flow_invariance_of_constraint_surface():
    for j in (0.5, 1.5):
        for delta in (1, -1):
            mode = _mode(j=j, delta=delta)
            report = radial.consistency_check(mode, [0.3, 0.7, 1.2])
            for entry in report:
                assert entry["residual"] < 1e-10, (j, delta, entry)
                assert entry["constraint_rank"] == 4
            lam = report[1]["lambda"][:2]
            expected = radial.expected_lambda_first_rows(mode, 0.7)
            assert np.abs(lam - expected).max() < 1e-10


def test_printed_variant_rows_are_not_flow_invariant():
    mode = _mode(j=1.5, delta=+1)
    omega = 0.7
    c = radial.constraint_matrix_printed_variant(mode, omega)
    a8 = radial.build_A8(mode, omega)
    h = 1e-6
    dc = (
        radial.constraint_matrix_printed_variant(mode, omega + h)
        - radial.constraint_matrix_printed_variant(mode, omega - h)
    ) / (2 * h)
    total = dc + c @ a8
    lam = total @ np.linalg.pinv(c)
    assert np.abs(total - lam @ c).max() > 1e-3


def test_residue_matrices_and_convergence_rates():
    mode = _mode(j=0.5, delta=+1)
    origin, horizon = radial.singular_residues(mode)
    # origin couplings carry +-a = +-1 at minimal j
    assert abs(origin[0, 4] + 1.0) < 1e-15
    assert abs(origin[4, 0] + 1.0) < 1e-15
    # Richardson-extrapolated sequence converges at second order, the raw
    # sequence only at first
    raw, extr = [], []
    for omega in (4e-2, 2e-2, 1e-2):
        g1 = omega * radial.build_A8(mode, omega)
        g2 = (omega / 2) * radial.build_A8(mode, omega / 2)
        raw.append(np.abs(g1 - origin).max())
        extr.append(np.abs(2 * g2 - g1 - origin).max())
    rate_raw = np.polyfit(np.log([4e-2, 2e-2, 1e-2]), np.log(raw), 1)[0]
    rate_extr = np.polyfit(np.log([4e-2, 2e-2, 1e-2]), np.log(extr), 1)[0]
    assert 0.8 < rate_raw < 1.2
    assert 1.8 < rate_extr < 2.2
    # horizon residue reproduces the energy and tangent weights
    assert abs(horizon[0, 0] + 1j * mode.eps) < 1e-15
    assert abs(horizon[0, 2] - 1.0) < 1e-15


def test_radial_system_domain_errors():
    mode = _mode(delta=+1)
    with pytest.raises(ValueError):
        radial.build_A8(mode, 0.0)
    with pytest.raises(ValueError):
        radial.build_A16(mode, np.pi / 2)
    with pytest.raises(ValueError):
        radial.build_A8(_mode(delta=None), 0.5)
    with pytest.raises(ValueError):
        radial.RadialSystem(mode=_mode(delta=None), dimension=8)
    with pytest.raises(ValueError):
        radial.parity_embed(0)
