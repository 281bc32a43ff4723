"""Spherical-wave substitution for the 16-component vector-bispinor field.

A mode is labelled by total momentum j, its projection m_j, dimensionless
energy eps and mass, and (optionally) the inversion sign delta.  The field
value at a point factorizes into sixteen radial amplitudes

    X = (f0..f3, g0..g3, h0..h3, nu0..nu3)

times fixed angular functions: slot 4*s + l carries the Wigner function
D_sigma with helicity label

    sigma = (-1/2, -3/2, -1/2, +1/2)  on the upper spinor rows (f, h),
    sigma = (+1/2, -1/2, +1/2, +3/2)  on the lower spinor rows (g, nu),

l being the cyclic vector index.  At j = 1/2 the |sigma| = 3/2 slots do not
exist and the amplitudes f1, g3, h1, nu3 are forced to zero.

The ``verify_*`` operations apply each matrix or differential operator of
the separated wave equation directly to an assembled state and compare
against the closed slot-by-slot reduction formulas; they are the numerical
adjudicators for every coefficient of the radial system.  Where a printed
transcription of a reduction disagrees with the direct matrix action, the
corrected form is implemented here and the discrepancy is recorded in
:data:`ADJUDICATIONS`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra, wigner
from .geometry import RadialPoint, connections, tetrad_divergences
from .wigner import _doubled, angular_coefficients, wigner_d, wigner_d_dtheta

# doubled helicity labels per slot, bispinor-major ordering
_TWO_SIGMA = np.array(
    [-1, -3, -1, 1, 1, -1, 1, 3, -1, -3, -1, 1, 1, -1, 1, 3], dtype=int
)

AMPLITUDE_NAMES = tuple(
    f"{grp}{l}" for grp in ("f", "g", "h", "nu") for l in range(4)
)

# amplitude-level image of the combined inversion matrix: the vector part
# swaps the spin +-1 slots, the bispinor part swaps the xi and eta blocks
_PARITY_SLOT = (0, 3, 2, 1)


@dataclass(frozen=True)
class ModeLabel:
    """Quantum numbers of one spherical mode."""

    j: float
    m_j: float
    eps: complex = 0.0
    mass: float = 0.0
    delta: int | None = None

    def __post_init__(self) -> None:
        two_j = _doubled(self.j, "j")
        two_m = _doubled(self.m_j, "m_j")
        if two_j <= 0 or two_j % 2 == 0:
            raise ValueError(f"j must be a positive half-odd integer, got {self.j}")
        if abs(two_m) > two_j or two_m % 2 == 0:
            raise ValueError(f"m_j = {self.m_j} incompatible with j = {self.j}")
        if self.delta not in (None, 1, -1):
            raise ValueError(f"delta must be +1, -1 or None, got {self.delta}")

    @property
    def two_j(self) -> int:
        return _doubled(self.j, "j")

    def coefficients(self) -> wigner.AngularCoefficients:
        return angular_coefficients(self.j)


def forced_zero_slots(mode: ModeLabel) -> np.ndarray:
    """Amplitude indices whose angular functions do not exist at this j."""
    return np.nonzero(np.abs(_TWO_SIGMA) > mode.two_j)[0]


def validate_state(mode: ModeLabel, state: np.ndarray) -> np.ndarray:
    state = np.asarray(state, dtype=complex)
    if state.shape != (16,):
        raise ValueError(f"state must have 16 amplitudes, got shape {state.shape}")
    if not np.all(np.isfinite(state)):
        raise ValueError("state amplitudes must be finite")
    bad = [k for k in forced_zero_slots(mode) if state[k] != 0]
    if bad:
        names = ", ".join(AMPLITUDE_NAMES[k] for k in bad)
        raise ValueError(f"amplitudes {names} must vanish at j = {mode.j}")
    return state


def random_state(mode: ModeLabel, rng: np.random.Generator) -> np.ndarray:
    """Amplitudes drawn uniformly from the unit disc, zero pattern imposed."""
    rad = np.sqrt(rng.uniform(0.0, 1.0, 16))
    ang = rng.uniform(0.0, 2 * np.pi, 16)
    state = rad * np.exp(1j * ang)
    state[forced_zero_slots(mode)] = 0.0
    return state


def _slot_d(mode: ModeLabel, two_sigma: int, theta, phi, deriv: bool = False):
    """exp(i m phi) d^j_{-m, sigma}(theta) (or its theta derivative)."""
    j, m = mode.j, mode.m_j
    small = (wigner_d_dtheta if deriv else wigner_d)(j, -m, two_sigma / 2.0, theta)
    return np.exp(1j * m * np.asarray(phi)) * small


def assemble(mode: ModeLabel, state: np.ndarray, theta: float, phi: float) -> np.ndarray:
    """Field value Phi(theta, phi): amplitude times slot angular function."""
    state = validate_state(mode, state)
    out = np.zeros(16, dtype=complex)
    for k in range(16):
        if state[k] != 0:
            out[k] = state[k] * _slot_d(mode, _TWO_SIGMA[k], theta, phi)
    return out


def _assemble_terms(mode, amps_and_sigmas, theta, phi) -> np.ndarray:
    """Sum of (slot, amplitude, two_sigma) contributions as a field vector."""
    out = np.zeros(16, dtype=complex)
    for slot, amp, two_sigma in amps_and_sigmas:
        if amp != 0:
            out[slot] += amp * _slot_d(mode, two_sigma, theta, phi)
    return out


def parity_image(mode: ModeLabel, state: np.ndarray) -> np.ndarray:
    """Amplitude-level action of the inversion operator (eigenvalue +-1).

    Image amplitudes: f <- nu, g <- h, h <- g, nu <- f, with the vector
    slots permuted by (0, 3, 2, 1).  States built from the inversion
    restrictions are eigenvectors with eigenvalue delta.
    """
    state = validate_state(mode, state)
    out = np.empty(16, dtype=complex)
    for l in range(4):
        lp = _PARITY_SLOT[l]
        out[0 + l] = state[12 + lp]
        out[4 + l] = state[8 + lp]
        out[8 + l] = state[4 + lp]
        out[12 + l] = state[0 + lp]
    return out


def apply_inversion(mode: ModeLabel, state: np.ndarray, theta: float, phi: float) -> np.ndarray:
    """(Pi x Pi~) Phi evaluated at the inverted point (pi - theta, phi + pi)."""
    combined = algebra.parity_operators()[2]
    return combined @ assemble(mode, state, np.pi - theta, phi + np.pi)


def inversion_phase(mode: ModeLabel) -> complex:
    """Phase relating the inverted field to the parity image, -exp(i pi j)."""
    return -np.exp(1j * np.pi * mode.j)


# ---------------------------------------------------------------------------
# operator verifications on the upper (xi) 8-block
# ---------------------------------------------------------------------------

def _xi_block(field: np.ndarray) -> np.ndarray:
    return field[:8]


def _t_matrices() -> tuple[np.ndarray, np.ndarray]:
    t1, t2, _ = algebra.tilde_spin_matrices()
    m25 = np.kron(algebra.pauli(1), t2)
    m26 = -np.kron(algebra.pauli(2), t1)
    return m25, m26


def verify_T_action(mode: ModeLabel, state: np.ndarray, theta: float, phi: float) -> dict:
    """Residuals of the spin-ladder reductions on the xi block.

    Applies sigma_1 x T~2 and -sigma_2 x T~1 (and their sum) to the
    assembled upper block and compares with the closed slot formulas.
    """
    state = validate_state(mode, state)
    f = state[0:4]
    g = state[4:8]
    xi = _xi_block(assemble(mode, state, theta, phi))
    m25, m26 = _t_matrices()

    c = 1j / np.sqrt(2.0)
    # sigma_1 x T~2: the +-1-helicity slots feed the spin-0 slot and back
    exp25 = _assemble_terms(
        mode,
        [
            (1, -c * g[2], 1), (2, c * g[1], -1), (2, -c * g[3], 3), (3, c * g[2], 1),
            (5, -c * f[2], -1), (6, c * f[1], -3), (6, -c * f[3], 1), (7, c * f[2], -1),
        ],
        theta,
        phi,
    )
    # -sigma_2 x T~1
    exp26 = _assemble_terms(
        mode,
        [
            (1, c * g[2], 1), (2, c * g[1], -1), (2, c * g[3], 3), (3, c * g[2], 1),
            (5, -c * f[2], -1), (6, -c * f[1], -3), (6, -c * f[3], 1), (7, -c * f[2], -1),
        ],
        theta,
        phi,
    )
    # sum: only four slots survive; the second lower amplitude is f3 (the
    # g3 seen in one printed transcription fails the direct action)
    c2 = 1j * np.sqrt(2.0)
    exp27 = _assemble_terms(
        mode,
        [
            (2, c2 * g[1], -1), (3, c2 * g[2], 1),
            (5, -c2 * f[2], -1), (6, -c2 * f[3], 1),
        ],
        theta,
        phi,
    )
    return {
        "t2_part": float(np.abs(m25 @ xi - exp25[:8]).max()),
        "t1_part": float(np.abs(m26 @ xi - exp26[:8]).max()),
        "combined": float(np.abs((m25 + m26) @ xi - exp27[:8]).max()),
    }


def verify_j03_action(
    mode: ModeLabel, state: np.ndarray, theta: float, phi: float, omega: float | None = None
) -> float:
    """Residual of the boost-block reduction on the xi block.

    The boost generator couples the time and spin-0 slots with -1 entries,
    so the closed form carries minus signs on both components (the variant
    with plus signs fails the direct action and is recorded in
    :data:`ADJUDICATIONS`).  With ``omega`` given, the physical prefactor
    i phi'/(2 phi) is included.
    """
    state = validate_state(mode, state)
    f = state[0:4]
    g = state[4:8]
    if omega is None:
        pref = 1j
    else:
        pt = RadialPoint.from_omega(omega)
        pref = 1j * pt.phi_prime / (2.0 * pt.phi_metric)
    mat = pref * np.kron(np.eye(2), algebra.tilde_generator(0, 3))
    xi = _xi_block(assemble(mode, state, theta, phi))
    expected = _assemble_terms(
        mode,
        [
            (2, -pref * f[0], -1), (0, -pref * f[2], -1),
            (6, -pref * g[0], 1), (4, -pref * g[2], 1),
        ],
        theta,
        phi,
    )
    return float(np.abs(mat @ xi - expected[:8]).max())


def _spin_weight(slot: int) -> float:
    """Eigenvalue of the diagonal spin projection on a 16-slot."""
    s, l = divmod(slot, 4)
    return (0.5 if s in (0, 2) else -0.5) + (0.0, 1.0, 0.0, -1.0)[l]


def _angular_action_block(mode, state, theta, phi) -> np.ndarray:
    """Direct action of the angular operator on the assembled xi block.

    i sigma_1 d_theta + sigma_2 (i d_phi + S~3 cos theta)/sin theta with
    the derivatives taken analytically on the slot functions.
    """
    f_th = np.zeros(8, dtype=complex)
    f_mix = np.zeros(8, dtype=complex)
    for k in range(8):
        if state[k] == 0:
            continue
        f_th[k] = state[k] * _slot_d(mode, _TWO_SIGMA[k], theta, phi, deriv=True)
        weight = (-mode.m_j + _spin_weight(k) * np.cos(theta)) / np.sin(theta)
        f_mix[k] = state[k] * weight * _slot_d(mode, _TWO_SIGMA[k], theta, phi)
    s1 = np.kron(algebra.pauli(1), np.eye(4))
    s2 = np.kron(algebra.pauli(2), np.eye(4))
    return 1j * (s1 @ f_th) + s2 @ f_mix


def verify_angular_operator(mode: ModeLabel, state: np.ndarray, theta: float, phi: float) -> float:
    """Residual of the angular-operator reduction on the xi block.

    The closed form carries ladder coefficients (a, b); the spin-0 lower
    slot enters with -a (the +a variant of one printed transcription fails
    the direct action, see :data:`ADJUDICATIONS`).
    """
    state = validate_state(mode, state)
    if not 0.0 < theta < np.pi:
        raise ValueError(f"theta must be interior to (0, pi), got {theta}")
    f = state[0:4]
    g = state[4:8]
    co = mode.coefficients()
    a, b = co.a, co.b
    direct = _angular_action_block(mode, state, theta, phi)
    expected = _assemble_terms(
        mode,
        [
            (0, 1j * a * g[0], -1), (1, 1j * b * g[1], -3),
            (2, 1j * a * g[2], -1), (3, 1j * b * g[3], 1),
            (4, -1j * a * f[0], 1), (5, -1j * b * f[1], -1),
            (6, -1j * a * f[2], 1), (7, -1j * b * f[3], 3),
        ],
        theta,
        phi,
    )
    return float(np.abs(direct - expected[:8]).max())


def verify_radial_derivative(
    mode: ModeLabel, state_deriv: np.ndarray, theta: float, phi: float
) -> float:
    """Residual of the radial-derivative slot pattern on the xi block."""
    state_deriv = validate_state(mode, state_deriv)
    df = state_deriv[0:4]
    dg = state_deriv[4:8]
    field = _xi_block(assemble(mode, state_deriv, theta, phi))
    direct = 1j * (np.kron(algebra.pauli(3), np.eye(4)) @ field)
    expected = _assemble_terms(
        mode,
        [(l, 1j * df[l], _TWO_SIGMA[l]) for l in range(4)]
        + [(4 + l, -1j * dg[l], _TWO_SIGMA[4 + l]) for l in range(4)],
        theta,
        phi,
    )
    return float(np.abs(direct - expected[:8]).max())


# ---------------------------------------------------------------------------
# constraints
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TraceCheck:
    """Result of contracting the field with the tetrad gamma matrices."""

    field_residual: float
    relations: np.ndarray
    consistency: float


def trace_relations(state: np.ndarray) -> np.ndarray:
    """The four algebraic combinations that the gamma trace reduces to."""
    f, g, h, nu = state[0:4], state[4:8], state[8:12], state[12:16]
    s2 = np.sqrt(2.0)
    return np.array(
        [
            f[0] - s2 * g[1] + f[2],
            g[0] + s2 * f[3] - g[2],
            h[0] + s2 * nu[1] - h[2],
            nu[0] - s2 * h[3] + nu[2],
        ]
    )


def verify_trace_constraint(
    mode: ModeLabel, state: np.ndarray, theta: float, phi: float
) -> TraceCheck:
    """Evaluate gamma^l Psi_l on the assembled state.

    The contraction vanishes exactly when the four algebraic relations do;
    under the inversion restrictions the eta-side pair coincides with the
    xi-side pair up to the overall sign delta.
    """
    state = validate_state(mode, state)
    field = assemble(mode, state, theta, phi)
    uinv = algebra.cyclic_transform_inverse()
    psi = [field[np.array([0, 4, 8, 12]) + k] for k in range(4)]  # cyclic bispinors
    total = np.zeros(4, dtype=complex)
    for l in range(4):
        bisp = sum(uinv[l, k] * psi[k] for k in range(4))
        total += algebra.gamma_matrix(l) @ bisp

    rel = trace_relations(state)
    expected = _assemble_terms(
        mode, [(0, rel[2], -1), (4, rel[3], 1), (8, rel[0], -1), (12, rel[1], 1)], theta, phi
    )
    expected_bisp = expected[np.array([0, 4, 8, 12])]
    return TraceCheck(
        field_residual=float(np.abs(total).max()),
        relations=rel,
        consistency=float(np.abs(total - expected_bisp).max()),
    )


@dataclass(frozen=True)
class DivergenceCheck:
    """Brute-force assembly of the covariant-divergence constraint."""

    collapse_residual: float
    relations: np.ndarray
    closed_form: np.ndarray
    residual: float
    printed_variant_residual: float


def divergence_relations(
    mode: ModeLabel, state: np.ndarray, state_deriv: np.ndarray, omega: float
) -> np.ndarray:
    """Closed-form values of the four divergence relations (corrected form).

    Each relation reads, on the (f, g, h, nu) block with upper sign for the
    f/nu rows and lower for g/h,

      -i eps/cos(w) X0 -/+ (tan(w)/2) X0 - X2' - (cot(w) - tan(w)/2) X2
      - cot(w)/sqrt2 * partner1 - (bc1 X1 + ac2 X3)/(sqrt2 sin(w))

    The (cot - tan/2) X2 term is required for the brute-force assembly to
    collapse and for the constraint surface to be flow-invariant; printed
    transcriptions that drop it are recorded in :data:`ADJUDICATIONS`.
    """
    state = validate_state(mode, state)
    dstate = np.asarray(state_deriv, dtype=complex)
    co = mode.coefficients()
    a, b = co.a, co.b
    s2 = np.sqrt(2.0)
    tw, cw, sw = np.tan(omega), np.cos(omega), np.sin(omega)
    ie = 1j * mode.eps / cw
    slope = 1.0 / tw - tw / 2.0

    f, g, h, nu = state[0:4], state[4:8], state[8:12], state[12:16]
    df2, dg2, dh2, dnu2 = dstate[2], dstate[6], dstate[10], dstate[14]
    return np.array(
        [
            -ie * f[0] - (tw / 2) * f[0] - df2 - slope * f[2]
            - g[1] / (s2 * tw) - (b * f[1] + a * f[3]) / (s2 * sw),
            -ie * g[0] + (tw / 2) * g[0] - dg2 - slope * g[2]
            - f[3] / (s2 * tw) - (a * g[1] + b * g[3]) / (s2 * sw),
            -ie * h[0] + (tw / 2) * h[0] - dh2 - slope * h[2]
            - nu[1] / (s2 * tw) - (b * h[1] + a * h[3]) / (s2 * sw),
            -ie * nu[0] - (tw / 2) * nu[0] - dnu2 - slope * nu[2]
            - h[3] / (s2 * tw) - (a * nu[1] + b * nu[3]) / (s2 * sw),
        ]
    )


def verify_divergence_constraint(
    mode: ModeLabel,
    state: np.ndarray,
    state_deriv: np.ndarray,
    omega: float,
    theta,
    phi,
) -> DivergenceCheck:
    """Assemble the covariant divergence term by term and reduce it.

    Checks that (i) the angular dependence of every bispinor component
    collapses onto the two base helicity functions, and (ii) the collapsed
    coefficients match :func:`divergence_relations`.  theta/phi may be
    scalars (companion angles are added) or equal-length sequences.
    """
    state = validate_state(mode, state)
    dstate = np.asarray(state_deriv, dtype=complex)
    if not 0.0 < omega < 0.5 * np.pi:
        raise ValueError(f"omega must lie in (0, pi/2), got {omega}")
    thetas = np.atleast_1d(np.asarray(theta, dtype=float))
    phis = np.atleast_1d(np.asarray(phi, dtype=float))
    if thetas.size == 1:
        t0 = thetas[0]
        thetas = np.array([t0, 0.5 * (t0 + np.pi / 2), 0.25 * t0 + 0.55])
        phis = np.array([phis[0], phis[0] + 0.9, phis[0] + 1.7])
    if thetas.shape != phis.shape:
        raise ValueError("theta and phi sample arrays must have equal length")

    pt = RadialPoint.from_omega(omega)
    values = np.stack(
        [_divergence_value(mode, state, dstate, pt, th, ph) for th, ph in zip(thetas, phis)],
        axis=1,
    )

    # component sigma pattern of the collapsed constraint
    two_sigma = (-1, 1, -1, 1)
    coeffs = np.zeros((4, thetas.size), dtype=complex)
    for i in range(4):
        base = np.array([_slot_d(mode, two_sigma[i], th, ph) for th, ph in zip(thetas, phis)])
        coeffs[i] = values[i] / base
    extracted = coeffs.mean(axis=1)
    collapse = float(np.abs(coeffs - extracted[:, None]).max())

    closed = divergence_relations(mode, state, dstate, omega)
    slope = 1.0 / np.tan(omega) - np.tan(omega) / 2.0
    printed = closed + slope * state[np.array([2, 6, 10, 14])]
    return DivergenceCheck(
        collapse_residual=collapse,
        relations=extracted,
        closed_form=closed,
        residual=float(np.abs(extracted - closed).max()),
        printed_variant_residual=float(np.abs(extracted - printed).max()),
    )


def _divergence_value(
    mode: ModeLabel,
    state: np.ndarray,
    dstate: np.ndarray,
    pt: RadialPoint,
    theta: float,
    phi: float,
) -> np.ndarray:
    """One angular sample of the divergence constraint (4-component bispinor).

    Sums the coordinate-derivative, tetrad-divergence and spinor-connection
    terms of (nabla + Gamma) e Psi with the separation prefactor divided
    out; the radial derivative therefore picks up the prefactor slope
    -1/r - phi'/(4 phi).
    """
    r, sq, p = pt.r, pt.sqrt_phi, pt.phi_metric
    uinv = algebra.cyclic_transform_inverse()

    def cyclic_bispinors(field: np.ndarray) -> list[np.ndarray]:
        return [field[np.array([0, 4, 8, 12]) + k] for k in range(4)]

    field = assemble(mode, state, theta, phi)
    dfield = assemble(mode, dstate, theta, phi)
    f_th = np.zeros(16, dtype=complex)
    for k in range(16):
        if state[k] != 0:
            f_th[k] = state[k] * _slot_d(mode, _TWO_SIGMA[k], theta, phi, deriv=True)

    psi = cyclic_bispinors(field)
    dpsi_w = cyclic_bispinors(dfield)
    dpsi_th = cyclic_bispinors(f_th)

    def spherical(psis: list[np.ndarray], l: int) -> np.ndarray:
        return sum(uinv[l, k] * psis[k] for k in range(4))

    # coordinate-derivative terms; e^{(l)alpha} carries frame signs (+,-,-,-)
    total = (-1j * mode.eps / sq) * spherical(psi, 0)
    prefactor_slope = -1.0 / r - pt.phi_prime / (4.0 * p)
    total += -sq * (spherical(dpsi_w, 3) / sq + prefactor_slope * spherical(psi, 3))
    total += -(1.0 / r) * spherical(dpsi_th, 1)
    total += -(1j * mode.m_j / (r * np.sin(theta))) * spherical(psi, 2)

    # tetrad-divergence terms
    div = tetrad_divergences(pt, theta)
    total += div[1] * spherical(psi, 1) + div[3] * spherical(psi, 3)

    # spinor-connection terms e^{(l)alpha} Gamma_alpha Psi_l
    gam = connections(pt, theta)[0]
    total += (1.0 / sq) * (gam[0] @ spherical(psi, 0))
    total += -(1.0 / r) * (gam[2] @ spherical(psi, 1))
    total += -(1.0 / (r * np.sin(theta))) * (gam[3] @ spherical(psi, 2))
    return total


# ---------------------------------------------------------------------------
# slot projection (used by the radial-coefficient extraction)
# ---------------------------------------------------------------------------

def projection_angles(n: int = 8) -> tuple[np.ndarray, np.ndarray]:
    """Fixed, well-spread angular samples used for slot projections."""
    k = np.arange(n)
    thetas = 0.35 + (np.pi - 0.7) * (k + 0.5) / n
    phis = 0.4 + 5.3 * k / n
    return thetas, phis


def project_to_amplitudes(
    mode: ModeLabel, values: np.ndarray, thetas: np.ndarray, phis: np.ndarray
) -> tuple[np.ndarray, float]:
    """Least-squares projection of sampled field values onto the slots.

    values[k, n] are samples of component k.  Each slot is expanded over
    every admissible helicity function at this j (|sigma| up to 5/2); the
    slot's own coefficient is the amplitude and any weight on the other
    functions is reported as leakage together with the fit residual.
    """
    two_sigmas = [ts for ts in range(-5, 6, 2) if abs(ts) <= mode.two_j]
    basis = np.stack(
        [
            np.array([_slot_d(mode, ts, th, ph) for th, ph in zip(thetas, phis)])
            for ts in two_sigmas
        ],
        axis=1,
    )  # [n_angles, n_sigma]
    amps = np.zeros(16, dtype=complex)
    leakage = 0.0
    for k in range(16):
        coef = np.linalg.lstsq(basis, values[k], rcond=None)[0]
        fit_residual = float(np.abs(values[k] - basis @ coef).max())
        if _TWO_SIGMA[k] in two_sigmas:
            col = two_sigmas.index(_TWO_SIGMA[k])
            amps[k] = coef[col]
            others = np.delete(coef, col)
        else:
            others = coef
        off_slot = float(np.abs(others).max()) if others.size else 0.0
        leakage = max(leakage, off_slot, fit_residual)
    return amps, leakage


ADJUDICATIONS: tuple[dict, ...] = (
    {
        "id": "radial-f0-row-angular-partner",
        "where": "first radial equation, angular coupling",
        "candidates": ["g0", "g3"],
        "implemented": "g0",
        "oracle": "angular reduction of the separated operator",
    },
    {
        "id": "radial-g2-row-spin0-partner",
        "where": "sixth radial equation, sqrt(2)/tan coupling",
        "candidates": ["f3", "f2"],
        "implemented": "f3",
        "oracle": "angular reduction of the separated operator",
    },
    {
        "id": "ladder-sum-lower-second-amplitude",
        "where": "combined spin-ladder action, lower spin-0 slot",
        "candidates": ["f3", "g3"],
        "implemented": "f3",
        "oracle": "direct 8x8 matrix action",
    },
    {
        "id": "boost-action-sign",
        "where": "boost-block action on the assembled state",
        "candidates": ["overall minus", "overall plus"],
        "implemented": "overall minus",
        "oracle": "direct 8x8 matrix action",
    },
    {
        "id": "angular-action-lower-spin0-sign",
        "where": "angular operator, lower spin-0 slot coefficient",
        "candidates": ["-a f2", "+a f2"],
        "implemented": "-a f2",
        "oracle": "analytic-derivative action plus ladder relations",
    },
    {
        "id": "divergence-energy-denominator",
        "where": "divergence relations, energy term",
        "candidates": ["cos(omega)", "cos(theta)"],
        "implemented": "cos(omega)",
        "oracle": "term-by-term assembly",
    },
    {
        "id": "divergence-radial-slope-term",
        "where": "divergence relations, non-derivative radial-slot term",
        "candidates": ["-(cot - tan/2) X2 present", "absent"],
        "implemented": "present",
        "oracle": "term-by-term assembly and flow invariance of the constraints",
    },
    {
        "id": "ladder-recurrence-raising-coefficient",
        "where": "theta-recurrence at helicity +3/2, raising term",
        "candidates": ["c", "b"],
        "implemented": "c",
        "oracle": "explicit-sum differentiation",
    },
    {
        "id": "total-momentum-transverse-pairing",
        "where": "conjugated momentum components, matrix terms",
        "candidates": ["J1 ~ cos(phi), J2 ~ sin(phi)", "J1 ~ sin(phi), J2 ~ cos(phi)"],
        "implemented": "J1 ~ cos(phi), J2 ~ sin(phi)",
        "oracle": "finite-difference conjugation of the Cartesian operator",
    },
    {
        "id": "lower-bispinor-transverse-sign",
        "where": "transverse ladder term of the lower-bispinor block equation",
        "candidates": ["minus", "plus"],
        "implemented": "minus",
        "oracle": "blockwise reduction of the 16-component operator; confirmed "
        "by the extracted radial couplings of the dependent amplitudes",
    },
)
