"""Constant matrices of the spin-3/2 formalism in the spherical tetrad gauge.

Conventions used throughout the package:

* metric signature (+, -, -, -), tetrad labels a, b in {0, 1, 2, 3};
* the bispinor is kept in the two-spinor split Phi = (xi, eta), so gamma^0
  has off-diagonal 2x2 identity blocks and gamma^k has off-diagonal
  -/+ sigma_k blocks (the sign choice is the one that reduces the curved
  Dirac-type operator blockwise to the coupled xi/eta system and makes the
  bispinor inversion matrix the exact anti-diagonal below);
* bispinor generators sigma^{ab} = [gamma^a, gamma^b] / 4;
* vector generators act on the tetrad-vector index as
  (j^{ab})[k, l] = delta^a_k g^{bl} - delta^b_k g^{al};
* the cyclic transform U rotates the three spatial vector components into
  the basis diagonalizing the spin-1 projection; tilde generators are the
  U-conjugated vector generators.

16-component objects are ordered bispinor-major: index = 4*s + l with
s in (xi_upper, xi_lower, eta_upper, eta_lower) and l the cyclic vector
index, so a product operator is ``np.kron(bispinor_part, vector_part)``.

All functions are pure and return fresh arrays; values may be shared
freely between threads.
"""

from __future__ import annotations

import warnings

import numpy as np

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

_SQ2 = np.sqrt(2.0)

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

_ID2 = np.eye(2, dtype=complex)


def _check_index(a: int) -> None:
    if a not in (0, 1, 2, 3):
        raise ValueError(f"tetrad index must be 0..3, got {a!r}")


def _check_pair(a: int, b: int) -> None:
    _check_index(a)
    _check_index(b)
    if a == b:
        raise ValueError(f"generator indices must differ, got ({a}, {b})")


def pauli(k: int) -> np.ndarray:
    """Pauli matrix sigma_k, k in {1, 2, 3}."""
    if k not in (1, 2, 3):
        raise ValueError(f"Pauli index must be 1..3, got {k!r}")
    return _PAULI[k - 1].copy()


def gamma_matrix(a: int) -> np.ndarray:
    """Dirac matrix gamma^a (4x4) in the two-spinor split representation."""
    _check_index(a)
    g = np.zeros((4, 4), dtype=complex)
    if a == 0:
        g[:2, 2:] = _ID2
        g[2:, :2] = _ID2
    else:
        g[:2, 2:] = -_PAULI[a - 1]
        g[2:, :2] = _PAULI[a - 1]
    return g


def bispinor_generator(a: int, b: int) -> np.ndarray:
    """Lorentz generator sigma^{ab} = [gamma^a, gamma^b]/4 on bispinors."""
    _check_pair(a, b)
    ga, gb = gamma_matrix(a), gamma_matrix(b)
    return 0.25 * (ga @ gb - gb @ ga)


def vector_generator(a: int, b: int) -> np.ndarray:
    """Lorentz generator j^{ab} acting on the tetrad-vector index.

    Entries are (j^{ab})[k, l] = delta^a_k g^{bl} - delta^b_k g^{al},
    real and in {0, +1, -1}.
    """
    _check_pair(a, b)
    m = np.zeros((4, 4))
    m[a, b] = METRIC[b, b]
    m[b, a] = -METRIC[a, a]
    return m.astype(complex)


def cyclic_transform() -> np.ndarray:
    """Unitary U mapping the spatial vector components to the cyclic basis.

    Row order: (time, spin +1, spin 0, spin -1); U^{-1} = U^dagger.
    """
    s = 1.0 / _SQ2
    return np.array(
        [
            [1, 0, 0, 0],
            [0, -s, 1j * s, 0],
            [0, 0, 0, 1],
            [0, s, 1j * s, 0],
        ],
        dtype=complex,
    )


def cyclic_transform_inverse() -> np.ndarray:
    """Closed-form inverse of the cyclic transform (its adjoint)."""
    return cyclic_transform().conj().T


def tilde_generator(a: int, b: int) -> np.ndarray:
    """Vector generator conjugated into the cyclic basis, U j^{ab} U^{-1}."""
    u = cyclic_transform()
    return u @ vector_generator(a, b) @ u.conj().T


def tilde_spin_matrices() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Hermitian spin-1 projections (T~1, T~2, T~3) in the cyclic basis.

    T~1 = i * tilde(j^{23}), T~2 = i * tilde(j^{31}), T~3 = i * tilde(j^{12});
    T~3 is diagonal with eigenvalues (0, +1, 0, -1).
    """
    return (
        1j * tilde_generator(2, 3),
        1j * tilde_generator(3, 1),
        1j * tilde_generator(1, 2),
    )


def parity_bispinor() -> np.ndarray:
    """Spatial-inversion matrix on the bispinor index (spherical gauge)."""
    return -np.fliplr(np.eye(4)).astype(complex)


def parity_vector() -> np.ndarray:
    """Spatial-inversion matrix on the cyclic vector index."""
    return np.array(
        [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]],
        dtype=complex,
    )


def parity_operators() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Inversion matrices: (bispinor 4x4, vector 4x4, combined 16x16).

    The combined operator is the Kronecker product and squares to the
    identity exactly.
    """
    pb = parity_bispinor()
    pv = parity_vector()
    return pb, pv, np.kron(pb, pv)


def spinor_rotation(theta: float, phi: float) -> np.ndarray:
    """2x2 rotation U_2(theta, phi) from the Cartesian to the spherical frame."""
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    ep, em = np.exp(1j * phi / 2.0), np.exp(-1j * phi / 2.0)
    return np.array([[c * ep, s * em], [-s * ep, c * em]], dtype=complex)


def spatial_rotation(theta: float, phi: float) -> np.ndarray:
    """3x3 real rotation carrying Cartesian vector components to spherical."""
    ct, st = np.cos(theta), np.sin(theta)
    cp, sp = np.cos(phi), np.sin(phi)
    return np.array(
        [
            [ct * cp, ct * sp, -st],
            [-sp, cp, 0.0],
            [st * cp, st * sp, ct],
        ]
    )


def _schrodinger_blocks(theta: float, phi: float) -> tuple[np.ndarray, np.ndarray]:
    u2 = spinor_rotation(theta, phi)
    bisp = np.zeros((4, 4), dtype=complex)
    bisp[:2, :2] = u2
    bisp[2:, 2:] = u2
    vec = np.zeros((4, 4), dtype=complex)
    vec[0, 0] = 1.0
    vec[1:, 1:] = spatial_rotation(theta, phi)
    return bisp, vec


def schrodinger_rotation(theta: float, phi: float) -> np.ndarray:
    """16x16 gauge rotation S(theta, phi) from Cartesian to spherical tetrad.

    theta in {0, pi} is allowed but the frame is coordinate-singular there,
    so a warning is emitted.
    """
    if min(abs(theta), abs(np.pi - theta)) < 1e-12:
        warnings.warn(
            "schrodinger_rotation evaluated on the polar axis; "
            "the spherical frame is coordinate-singular there",
            stacklevel=2,
        )
    bisp, vec = _schrodinger_blocks(theta, phi)
    return np.kron(bisp, vec)


def schrodinger_rotation_inverse(theta: float, phi: float) -> np.ndarray:
    """Closed-form inverse of S(theta, phi): adjoint spinor block, transposed
    rotation block."""
    bisp, vec = _schrodinger_blocks(theta, phi)
    return np.kron(bisp.conj().T, vec.conj().T)


def spin_matrix(i: int) -> np.ndarray:
    """Cartesian-frame total spin projection S_i (16x16).

    S_i = Sigma_i/2 on the bispinor index plus the spin-1 block tau_i,
    (tau_i)[j, k] = -i eps_{ijk}, embedded in the spatial vector slots.
    """
    if i not in (1, 2, 3):
        raise ValueError(f"spin index must be 1..3, got {i!r}")
    sigma_block = np.kron(_ID2, _PAULI[i - 1])  # diag(sigma_i, sigma_i)
    tau = np.zeros((4, 4), dtype=complex)
    for j in range(1, 4):
        for k in range(1, 4):
            tau[j, k] = -1j * _levi_civita(i, j, k)
    return 0.5 * np.kron(sigma_block, np.eye(4)) + np.kron(np.eye(4), tau)


def tilde_spin3() -> np.ndarray:
    """Diagonal total spin projection in the cyclic basis (16x16)."""
    sigma3_block = np.kron(_ID2, _PAULI[2])
    t3 = tilde_spin_matrices()[2]
    return 0.5 * np.kron(sigma3_block, np.eye(4)) + np.kron(np.eye(4), t3)


def _levi_civita(i: int, j: int, k: int) -> int:
    return (i - j) * (j - k) * (k - i) // 2


# ---------------------------------------------------------------------------
# identity battery (consumed by the tests and the ``verify algebra`` command)
# ---------------------------------------------------------------------------

def clifford_residual() -> float:
    """max |gamma^a gamma^b + gamma^b gamma^a - 2 g^{ab} I| over all pairs."""
    worst = 0.0
    eye = np.eye(4)
    for a in range(4):
        for b in range(4):
            ga, gb = gamma_matrix(a), gamma_matrix(b)
            dev = ga @ gb + gb @ ga - 2.0 * METRIC[a, b] * eye
            worst = max(worst, float(np.abs(dev).max()))
    return worst


def _generator(family: str, a: int, b: int) -> np.ndarray:
    if family == "bispinor":
        return bispinor_generator(a, b)
    if family == "vector":
        return vector_generator(a, b)
    if family == "tilde":
        # full transformed generator: bispinor part plus cyclic vector part
        return np.kron(bispinor_generator(a, b), np.eye(4)) + np.kron(
            np.eye(4), tilde_generator(a, b)
        )
    raise ValueError(f"unknown generator family {family!r}")


def lorentz_algebra_residual(family: str) -> float:
    """max deviation of [G^{ab}, G^{cd}] from the so(3,1) structure terms.

    The commutator must equal
    g^{ad} G^{bc} + g^{bc} G^{ad} - g^{ac} G^{bd} - g^{bd} G^{ac}
    for every pair of index pairs.
    """

    def gen(a, b):
        if a == b:
            n = 4 if family in ("bispinor", "vector") else 16
            return np.zeros((n, n), dtype=complex)
        return _generator(family, a, b)

    pairs = [(a, b) for a in range(4) for b in range(4) if a != b]
    worst = 0.0
    for a, b in pairs:
        gab = gen(a, b)
        for c, d in pairs:
            lhs = gab @ gen(c, d) - gen(c, d) @ gab
            rhs = (
                METRIC[a, d] * gen(b, c)
                + METRIC[b, c] * gen(a, d)
                - METRIC[a, c] * gen(b, d)
                - METRIC[b, d] * gen(a, c)
            )
            worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def gamma_contraction_residuals() -> dict[str, float]:
    """Deviations of the two contraction identities used by the radial split.

    gamma^1 sigma^{31} + gamma^2 sigma^{32} = gamma^3 and
    gamma^0 sigma^{03} = gamma^3 / 2.
    """
    lhs1 = gamma_matrix(1) @ bispinor_generator(3, 1) + gamma_matrix(2) @ bispinor_generator(3, 2)
    lhs2 = gamma_matrix(0) @ bispinor_generator(0, 3)
    g3 = gamma_matrix(3)
    return {
        "gamma1.sigma31 + gamma2.sigma32 == gamma3": float(np.abs(lhs1 - g3).max()),
        "gamma0.sigma03 == gamma3/2": float(np.abs(lhs2 - 0.5 * g3).max()),
    }


def reference_tilde_matrices() -> dict[str, np.ndarray]:
    """Closed-form cyclic-basis spin matrices used as entrywise references.

    T~1 and T~2 are the standard spherical-basis spin-1 matrices embedded in
    the (1, 2, 3) cyclic slots, T~3 their diagonal projection, and the boost
    block couples the time slot to the spin-0 slot with -1 entries.
    """
    s = 1.0 / _SQ2
    t1 = np.array(
        [[0, 0, 0, 0], [0, 0, s, 0], [0, s, 0, s], [0, 0, s, 0]], dtype=complex
    )
    t2 = np.array(
        [[0, 0, 0, 0], [0, 0, -1j * s, 0], [0, 1j * s, 0, -1j * s], [0, 0, 1j * s, 0]],
        dtype=complex,
    )
    t3 = np.diag([0, 1.0, 0, -1.0]).astype(complex)
    boost = np.zeros((4, 4), dtype=complex)
    boost[0, 2] = boost[2, 0] = -1.0
    return {"T1": t1, "T2": t2, "T3": t3, "boost03": boost}


def tilde_similarity_residuals() -> dict[str, float]:
    """Entrywise deviation of U j^{ab} U^{-1} from the closed references."""
    ref = reference_tilde_matrices()
    t1, t2, t3 = tilde_spin_matrices()
    return {
        "T1": float(np.abs(t1 - ref["T1"]).max()),
        "T2": float(np.abs(t2 - ref["T2"]).max()),
        "T3": float(np.abs(t3 - ref["T3"]).max()),
        "boost03": float(np.abs(tilde_generator(0, 3) - ref["boost03"]).max()),
    }


def unitarity_residuals() -> dict[str, float]:
    u = cyclic_transform()
    out = {"U.Udagger": float(np.abs(u @ u.conj().T - np.eye(4)).max())}
    rng = np.random.default_rng(7)
    worst_s = 0.0
    for _ in range(5):
        th = rng.uniform(0.2, np.pi - 0.2)
        ph = rng.uniform(0.0, 2 * np.pi)
        s = schrodinger_rotation(th, ph)
        sinv = schrodinger_rotation_inverse(th, ph)
        worst_s = max(worst_s, float(np.abs(s @ sinv - np.eye(16)).max()))
        worst_s = max(worst_s, float(np.abs(sinv - np.linalg.inv(s)).max()))
    out["S.Sinv"] = worst_s
    return out


def parity_involution_residual() -> float:
    combined = parity_operators()[2]
    return float(np.abs(combined @ combined - np.eye(16)).max())


def total_momentum_conjugation_residual(n_points: int = 20, seed: int = 0) -> float:
    """Check the spherical-frame form of the conjugated total momentum.

    S (l_i + S_i) S^{-1} applied to smooth test sections must equal
    l_3 for the third component and l_{1,2} plus S_3 cos(phi)/sin(theta)
    resp. S_3 sin(phi)/sin(theta) for the transverse ones (the pairing is
    fixed numerically; a transcription with sin and cos swapped fails this
    check).  Derivatives are taken by central differences.
    """
    rng = np.random.default_rng(seed)
    h = 1e-6
    k = np.arange(16)

    def section(theta: float, phi: float) -> np.ndarray:
        return np.cos((k + 1) * 0.3 * theta + 0.1 * k) * np.exp(
            1j * 0.2 * (k % 3) * phi
        ) + 0.3 * k * np.sin(theta)

    def orbital(i: int, fun, theta: float, phi: float) -> np.ndarray:
        dth = (fun(theta + h, phi) - fun(theta - h, phi)) / (2 * h)
        dph = (fun(theta, phi + h) - fun(theta, phi - h)) / (2 * h)
        ct = 1.0 / np.tan(theta)
        if i == 1:
            return 1j * (np.sin(phi) * dth + ct * np.cos(phi) * dph)
        if i == 2:
            return 1j * (-np.cos(phi) * dth + ct * np.sin(phi) * dph)
        return -1j * dph

    s3 = spin_matrix(3)
    worst = 0.0
    for _ in range(n_points):
        th = rng.uniform(0.3, np.pi - 0.3)
        ph = rng.uniform(0.0, 2 * np.pi)
        f = section(th, ph)
        for i in (1, 2, 3):
            spin_i = spin_matrix(i)

            def rotated(tt: float, pp: float) -> np.ndarray:
                return schrodinger_rotation_inverse(tt, pp) @ section(tt, pp)

            conj = schrodinger_rotation(th, ph) @ (
                orbital(i, rotated, th, ph) + spin_i @ rotated(th, ph)
            )
            if i == 1:
                expect = orbital(1, section, th, ph) + (np.cos(ph) / np.sin(th)) * (s3 @ f)
            elif i == 2:
                expect = orbital(2, section, th, ph) + (np.sin(ph) / np.sin(th)) * (s3 @ f)
            else:
                expect = orbital(3, section, th, ph)
            worst = max(worst, float(np.abs(conj - expect).max()))
    return worst
