"""Numerical integration of the radial system with singular-endpoint tools.

Both endpoints of the radial interval (0, pi/2) are regular singular
points: the coefficient matrix has a simple pole with closed-form residue.
:func:`frobenius` recovers the residue by Richardson extrapolation and
returns its eigen-structure (the local power-law exponents), and
:func:`endpoint_launch` builds first-order-accurate solution data near an
endpoint from a chosen exponent.

:func:`integrate` is an adaptive embedded Runge-Kutta pair of orders
5(4) (Dormand-Prince coefficients) with PI step-size control and a
continuous (dense) output on every accepted step.  Constraint residuals
are recorded along the trace so that drift of the algebraic relations can
be monitored directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .radial import ConstraintSet, RadialSystem

_HALF_PI = 0.5 * np.pi

# Dormand-Prince 5(4) tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = (
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
)
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_E = np.array(
    [
        35 / 384 - 5179 / 57600,
        0.0,
        500 / 1113 - 7571 / 16695,
        125 / 192 - 393 / 640,
        -2187 / 6784 + 92097 / 339200,
        11 / 84 - 187 / 2100,
        -1 / 40,
    ]
)
# dense-output weights (classic order-4 continuous extension)
_D = np.array(
    [
        -12715105075 / 11282082432,
        0.0,
        87487479700 / 32700410799,
        -10690763975 / 1880347072,
        701980252875 / 199316789632,
        -1453857185 / 822651844,
        69997945 / 29380423,
    ]
)


class SingularityError(RuntimeError):
    """Step size underflowed, typically while approaching an endpoint."""

    def __init__(self, message: str, trace: "SolutionTrace | None" = None):
        super().__init__(message)
        self.trace = trace


class ToleranceError(RuntimeError):
    """The requested local tolerance could not be met."""


@dataclass(frozen=True)
class IndicialData:
    """Local power-law data of a singular endpoint.

    ``exponents`` are the eigenvalues of the residue matrix
    lim (omega - w0) A(omega), sorted by descending real part;
    solutions behave like |omega - w0|^exponent near the endpoint.
    """

    endpoint: str
    direction: int
    residue: np.ndarray
    subleading: np.ndarray
    exponents: np.ndarray
    vectors: np.ndarray
    eigen_residuals: np.ndarray

    def regular_indices(self, tol: float = 1e-12) -> list[int]:
        """Indices of exponents with non-negative real part (bounded data)."""
        return [k for k in range(len(self.exponents)) if self.exponents[k].real >= -tol]


@dataclass
class SolutionTrace:
    """Accepted-step samples of one integration.

    ``residuals`` holds the normalized constraint-row values at each
    sample; ``steps`` and ``errors`` are the step sizes and local error
    estimates.  ``evaluate`` interpolates with the integrator's dense
    output (fourth-order accurate between samples).
    """

    omegas: np.ndarray
    states: np.ndarray
    residuals: np.ndarray
    steps: np.ndarray
    errors: np.ndarray
    _dense: list = field(default_factory=list, repr=False)

    @property
    def n_steps(self) -> int:
        return len(self.omegas) - 1

    def evaluate(self, omega: float) -> np.ndarray:
        lo, hi = sorted((self.omegas[0], self.omegas[-1]))
        if not lo <= omega <= hi:
            raise ValueError(f"omega = {omega} outside the integrated range")
        for (w0, h, cont) in self._dense:
            t = (omega - w0) / h
            if -1e-12 <= t <= 1.0 + 1e-12:
                t = min(max(t, 0.0), 1.0)
                r1, r2, r3, r4, r5 = cont
                return r1 + t * (r2 + (1 - t) * (r3 + t * (r4 + (1 - t) * r5)))
        raise ValueError(f"no dense segment covers omega = {omega}")


def _error_norm(err: np.ndarray, y0: np.ndarray, y1: np.ndarray, atol: float, rtol: float) -> float:
    scale = atol + rtol * np.maximum(np.abs(y0), np.abs(y1))
    return float(np.sqrt(np.mean(np.abs(err / scale) ** 2)))


def integrate(
    system: RadialSystem,
    constraints: ConstraintSet | None,
    omega_start: float,
    omega_end: float,
    y0: np.ndarray,
    tol: float = 1e-10,
    h0: float | None = None,
    max_steps: int = 200_000,
) -> SolutionTrace:
    """Integrate Y' = A(omega) Y from omega_start to omega_end.

    The local error per step is controlled to ``tol`` (used as both the
    absolute and relative weight).  Constraint residuals are evaluated at
    every accepted step.  Near a singular endpoint the step size can
    underflow; that raises :class:`SingularityError` carrying the partial
    trace, while a persistently rejected step raises
    :class:`ToleranceError`.
    """
    lo, hi = sorted((omega_start, omega_end))
    if not (0.0 < lo and hi < _HALF_PI):
        raise ValueError("integration range must be inside (0, pi/2)")
    y = np.asarray(y0, dtype=complex).copy()
    if y.shape != (system.dimension,):
        raise ValueError(f"state must have shape ({system.dimension},)")
    if not np.all(np.isfinite(y)):
        raise ValueError("initial state must be finite")

    direction = 1.0 if omega_end >= omega_start else -1.0
    span = abs(omega_end - omega_start)
    h = direction * (h0 if h0 is not None else min(1e-2, 0.1 * span))
    h_min = max(1e-14, 4.0 * np.finfo(float).eps * span)

    def rhs(w: float, state: np.ndarray) -> np.ndarray:
        return system.matrix(w) @ state

    def resid(w: float, state: np.ndarray) -> np.ndarray:
        if constraints is None:
            return np.zeros(4)
        return constraints.residuals(w, state)

    w = float(omega_start)
    k_last = rhs(w, y)
    omegas, states, residuals, steps, errors = [w], [y.copy()], [resid(w, y)], [0.0], [0.0]
    dense: list = []
    err_prev = 1.0
    rejected_in_a_row = 0

    for _ in range(max_steps):
        if direction * (omega_end - w) <= 0:
            break
        if abs(h) < h_min:
            trace = _finalize(omegas, states, residuals, steps, errors, dense)
            raise SingularityError(
                f"step size underflow at omega = {w:.6g} (h = {abs(h):.3e})", trace
            )
        if direction * (w + h - omega_end) > 0:
            h = omega_end - w

        k = np.empty((7, y.size), dtype=complex)
        k[0] = k_last
        for i, row in enumerate(_A):
            k[i + 1] = rhs(w + _C[i + 1] * h, y + h * (row @ k[: i + 1]))
        y_new = y + h * (_B5 @ k)
        err_vec = h * (_E @ k)
        err = _error_norm(err_vec, y, y_new, tol, tol)

        if err <= 1.0:
            # accepted: store the dense-output segment, then advance
            ydiff = y_new - y
            bspl = h * k[0] - ydiff
            cont = (
                y.copy(),
                ydiff,
                bspl,
                ydiff - h * k[6] - bspl,
                h * (_D @ k),
            )
            dense.append((w, h, cont))
            w = w + h
            y = y_new
            k_last = k[6]
            omegas.append(w)
            states.append(y.copy())
            residuals.append(resid(w, y))
            steps.append(h)
            errors.append(err)
            fac = 0.9 * err ** -0.14 * err_prev ** 0.08 if err > 0 else 5.0
            err_prev = max(err, 1e-4)
            rejected_in_a_row = 0
        else:
            fac = max(0.2, 0.9 * err ** -0.2)
            rejected_in_a_row += 1
            if rejected_in_a_row > 60:
                raise ToleranceError(
                    f"unable to meet tol = {tol:.1e} at omega = {w:.6g} "
                    f"(error estimate {err:.3e})"
                )
        h = h * min(5.0, max(0.2, fac))
    else:
        raise ToleranceError(f"exceeded {max_steps} steps before reaching omega_end")

    return _finalize(omegas, states, residuals, steps, errors, dense)


def _finalize(omegas, states, residuals, steps, errors, dense) -> SolutionTrace:
    return SolutionTrace(
        omegas=np.array(omegas),
        states=np.array(states),
        residuals=np.array(residuals),
        steps=np.array(steps),
        errors=np.array(errors),
        _dense=dense,
    )


# ---------------------------------------------------------------------------
# singular endpoints
# ---------------------------------------------------------------------------

def frobenius(
    system: RadialSystem,
    endpoint: str,
    base: float = 2e-2,
    levels: int = 8,
    tol: float = 1e-8,
) -> IndicialData:
    """Residue matrix and indicial exponents of a singular endpoint.

    The residue lim (omega - w0) A(omega) and the subleading constant term
    are obtained by Richardson extrapolation on a geometric sequence of
    offsets; failure to converge below ``tol`` raises ArithmeticError.
    Exponents come sorted by descending real part, with eigenvectors as
    matching columns of ``vectors``.
    """
    if endpoint == "origin":
        w0, d = 0.0, 1
    elif endpoint == "horizon":
        w0, d = _HALF_PI, -1
    else:
        raise ValueError(f"endpoint must be 'origin' or 'horizon', got {endpoint!r}")

    def g(u: float) -> np.ndarray:
        return d * u * system.matrix(w0 + d * u)

    residue, conv = _richardson(g, base, levels)
    if conv > tol:
        raise ArithmeticError(
            f"residue extrapolation did not converge: residual {conv:.3e}"
        )

    def h_fun(u: float) -> np.ndarray:
        return system.matrix(w0 + d * u) - residue / (d * u)

    subleading, conv2 = _richardson(h_fun, base, levels)
    if conv2 > max(tol, 1e-7):
        raise ArithmeticError(
            f"subleading extrapolation did not converge: residual {conv2:.3e}"
        )

    lam, vec = np.linalg.eig(residue)
    order = np.lexsort((-lam.imag, -lam.real))
    lam, vec = lam[order], vec[:, order]
    eig_res = np.array(
        [np.abs(residue @ vec[:, k] - lam[k] * vec[:, k]).max() for k in range(len(lam))]
    )
    return IndicialData(
        endpoint=endpoint,
        direction=d,
        residue=residue,
        subleading=subleading,
        exponents=lam,
        vectors=vec,
        eigen_residuals=eig_res,
    )


def _richardson(fun, base: float, levels: int) -> tuple[np.ndarray, float]:
    """Richardson table for fun(u) = F + c1 u + c2 u^2 + ... as u -> 0."""
    table = [np.asarray(fun(base / 2**k), dtype=complex) for k in range(levels)]
    best = table[-1]
    conv = np.inf
    for m in range(1, levels):
        fac = 2.0**m
        table = [
            (fac * table[k + 1] - table[k]) / (fac - 1.0)
            for k in range(len(table) - 1)
        ]
        conv = float(np.abs(table[-1] - best).max())
        best = table[-1]
        if len(table) < 2:
            break
    return best, conv


@dataclass(frozen=True)
class LaunchState:
    """First-order Frobenius data launched a small offset from an endpoint."""

    omega: float
    state: np.ndarray
    exponent: complex
    resonant: bool


def endpoint_launch(
    system: RadialSystem,
    indicial: IndicialData,
    exponent_index: int,
    offset: float = 1e-3,
) -> LaunchState:
    """Solution data Y = u^lam (v + u w) at local distance u = offset.

    The first-order correction solves (R - (lam + 1) I) w = -d A0 v with R
    the residue and A0 the subleading term; if lam + 1 resonates with
    another exponent the correction is taken in the least-squares sense
    and flagged.
    """
    lam = indicial.exponents[exponent_index]
    if indicial.endpoint == "origin" and lam.real < -1e-12:
        raise ValueError(
            f"exponent {lam} has negative real part; launch at the origin "
            "requires a bounded (regular) solution"
        )
    v = indicial.vectors[:, exponent_index]
    rhs = -indicial.direction * (indicial.subleading @ v)
    shifted = indicial.residue - (lam + 1.0) * np.eye(len(v))
    resonant = bool(np.min(np.abs(indicial.exponents - (lam + 1.0))) < 1e-8)
    if resonant:
        w = np.linalg.lstsq(shifted, rhs, rcond=None)[0]
    else:
        w = np.linalg.solve(shifted, rhs)
    u = float(offset)
    state = u**lam * (v + u * w)
    omega = u if indicial.endpoint == "origin" else _HALF_PI - u
    return LaunchState(omega=omega, state=state, exponent=lam, resonant=resonant)


def constraint_kernel_state(
    constraints: ConstraintSet,
    omega: float,
    seed_state: np.ndarray,
    zero_slots=(),
) -> np.ndarray:
    """Project a state onto the null space of the constraint rows.

    ``zero_slots`` are additionally zeroed (the amplitudes that a low-j
    mode forbids) before and after the projection.
    """
    c = constraints.matrix(omega)
    y = np.asarray(seed_state, dtype=complex).copy()
    y[list(zero_slots)] = 0.0
    # null-space projector from the SVD
    _, s, vh = np.linalg.svd(c)
    rank = int((s > 1e-12 * s[0]).sum())
    null = vh[rank:].conj().T
    y = null @ (null.conj().T @ y)
    y[list(zero_slots)] = 0.0
    return y
