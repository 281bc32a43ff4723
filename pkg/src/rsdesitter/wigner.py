"""Half-integer Wigner functions for the spherical-wave substitution.

The angular factor attached to a slot with helicity label sigma is

    D_sigma(theta, phi) = exp(i m phi) d^j_{-m, sigma}(theta),

with the small d-function evaluated from the explicit factorial sum.  This
sign convention is the one under which the raising/lowering recurrences in
theta (listed in :func:`recurrence_residuals`) hold with the coefficients

    a = j + 1/2,
    b = sqrt((j - 1/2)(j + 3/2)),
    c = sqrt((j - 3/2)(j + 5/2)),

where b vanishes at j = 1/2 and c is defined as zero below j = 5/2 (there it
would multiply functions that do not exist for the given j, so the value is
irrelevant; zero avoids an imaginary square root).

Half-integers are validated exactly by doubling to odd integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np


def _doubled(x, name: str = "value") -> int:
    """Exact doubled-integer representation of a (half-)integer label."""
    d = 2.0 * float(x)
    rounded = int(round(d))
    if abs(d - rounded) > 1e-9:
        raise ValueError(f"{name} = {x!r} is not a half-integer")
    return rounded


def _validate_jm(two_j: int, two_m: int, name: str) -> None:
    if two_j <= 0 or two_j % 2 == 0:
        raise ValueError(f"j must be a positive half-odd integer, got {two_j / 2}")
    if abs(two_m) > two_j or (two_j - two_m) % 2 != 0:
        raise ValueError(f"{name} = {two_m / 2} incompatible with j = {two_j / 2}")


@dataclass(frozen=True)
class AngularCoefficients:
    """Ladder coefficients (a, b, c) attached to total momentum j."""

    j: float
    a: float
    b: float
    c: float


def angular_coefficients(j) -> AngularCoefficients:
    two_j = _doubled(j, "j")
    _validate_jm(two_j, two_j, "j")
    jf = two_j / 2.0
    a = jf + 0.5
    b = np.sqrt((jf - 0.5) * (jf + 1.5)) if two_j >= 3 else 0.0
    c = np.sqrt((jf - 1.5) * (jf + 2.5)) if two_j >= 5 else 0.0
    return AngularCoefficients(j=jf, a=a, b=float(b), c=float(c))


def ladder_coefficients(j, sigma) -> tuple[float, float]:
    """(lowering, raising) coefficients for the helicity ladder at sigma.

    lowering = sqrt((j + sigma)(j - sigma + 1)) multiplies the sigma-1
    function, raising = sqrt((j - sigma)(j + sigma + 1)) the sigma+1 one.
    """
    jf = _doubled(j, "j") / 2.0
    sf = _doubled(sigma, "sigma") / 2.0
    low = (jf + sf) * (jf - sf + 1.0)
    high = (jf - sf) * (jf + sf + 1.0)
    return float(np.sqrt(max(low, 0.0))), float(np.sqrt(max(high, 0.0)))


def wigner_d(j, mp, m, theta):
    """Small Wigner function d^j_{mp, m}(theta) from the factorial sum.

    ``theta`` may be a scalar or an ndarray.  Labels may be any
    (half-)integers with |mp|, |m| <= j and j - mp, j - m integral.
    """
    two_j = _doubled(j, "j")
    two_mp = _doubled(mp, "mp")
    two_m = _doubled(m, "m")
    if two_j < 0:
        raise ValueError("j must be non-negative")
    for lbl, val in (("mp", two_mp), ("m", two_m)):
        if abs(val) > two_j or (two_j - val) % 2 != 0:
            raise ValueError(f"{lbl} = {val / 2} incompatible with j = {two_j / 2}")

    jm = (two_j + two_m) // 2
    jmm = (two_j - two_m) // 2
    jmp = (two_j + two_mp) // 2
    jmmp = (two_j - two_mp) // 2
    dm = (two_mp - two_m) // 2  # mp - m

    pref = np.sqrt(
        float(factorial(jmp)) * factorial(jmmp) * factorial(jm) * factorial(jmm)
    )
    c = np.cos(np.asarray(theta) / 2.0)
    s = np.sin(np.asarray(theta) / 2.0)

    total = np.zeros_like(np.asarray(theta, dtype=float))
    for k in range(max(0, -dm), min(jm, jmmp) + 1):
        denom = (
            factorial(jm - k) * factorial(k) * factorial(jmmp - k) * factorial(dm + k)
        )
        sign = -1.0 if (dm + k) % 2 else 1.0
        total = total + (sign / denom) * c ** (jm + jmmp - 2 * k) * s ** (dm + 2 * k)
    out = pref * total
    return out if out.ndim else float(out)


def wigner_d_dtheta(j, mp, m, theta):
    """Analytic theta-derivative of the small d-function (termwise)."""
    two_j = _doubled(j, "j")
    two_mp = _doubled(mp, "mp")
    two_m = _doubled(m, "m")
    jm = (two_j + two_m) // 2
    jmm = (two_j - two_m) // 2
    jmp = (two_j + two_mp) // 2
    jmmp = (two_j - two_mp) // 2
    dm = (two_mp - two_m) // 2

    pref = np.sqrt(
        float(factorial(jmp)) * factorial(jmmp) * factorial(jm) * factorial(jmm)
    )
    c = np.cos(np.asarray(theta) / 2.0)
    s = np.sin(np.asarray(theta) / 2.0)

    total = np.zeros_like(np.asarray(theta, dtype=float))
    for k in range(max(0, -dm), min(jm, jmmp) + 1):
        denom = (
            factorial(jm - k) * factorial(k) * factorial(jmmp - k) * factorial(dm + k)
        )
        sign = -1.0 if (dm + k) % 2 else 1.0
        p = jm + jmmp - 2 * k  # power of cos(theta/2)
        q = dm + 2 * k  # power of sin(theta/2)
        term = np.zeros_like(total)
        if q > 0:
            term = term + 0.5 * q * c ** (p + 1) * s ** (q - 1)
        if p > 0:
            term = term - 0.5 * p * c ** (p - 1) * s ** (q + 1)
        total = total + (sign / denom) * term
    out = pref * total
    return out if out.ndim else float(out)


def wigner_D(j, m, sigma, theta, phi):
    """Slot angular function exp(i m phi) d^j_{-m, sigma}(theta)."""
    two_j = _doubled(j, "j")
    two_m = _doubled(m, "m")
    two_s = _doubled(sigma, "sigma")
    _validate_jm(two_j, two_m, "m")
    if abs(two_s) > two_j or abs(two_s) > 3 or (two_j - two_s) % 2 != 0:
        raise ValueError(
            f"sigma = {two_s / 2} invalid for a vector-bispinor slot at j = {two_j / 2}"
        )
    return np.exp(1j * (two_m / 2.0) * np.asarray(phi)) * wigner_d(j, -m, sigma, theta)


def _theta_relations(j, m):
    """The eight ladder relations at helicities +-1/2, +-3/2 for given (j, m).

    Each entry is (name, sigma, kind) with kind 'dtheta' for the derivative
    relation and 'mixed' for ((i d_phi - sigma cos)/sin).  Right-hand sides:

        dtheta:  ( low * D_{sigma-1} - high * D_{sigma+1} ) / 2
        mixed:   (-low * D_{sigma-1} - high * D_{sigma+1} ) / 2

    with (low, high) from :func:`ladder_coefficients`.
    """
    two_j = _doubled(j, "j")
    rel = []
    for two_s in (1, -1, 3, -3):
        if abs(two_s) > two_j:
            continue
        sigma = two_s / 2.0
        rel.append((f"dtheta sigma={sigma:+.1f}", sigma, "dtheta"))
        rel.append((f"mixed sigma={sigma:+.1f}", sigma, "mixed"))
    return rel


def recurrence_residuals(j, m, thetas, fd_step: float = 1e-6):
    """Residual table for the helicity ladder relations on a theta grid.

    Returns a list of dict rows with the analytic residual, the residual
    with the theta-derivative replaced by central finite differences, and
    the worst analytic/finite-difference derivative disagreement.
    Grid points must be interior to (0, pi).
    """
    thetas = np.asarray(thetas, dtype=float)
    if thetas.min() <= 0.0 or thetas.max() >= np.pi:
        raise ValueError("theta grid must be interior to (0, pi)")
    two_j = _doubled(j, "j")
    two_m = _doubled(m, "m")
    _validate_jm(two_j, two_m, "m")
    mf = two_m / 2.0

    def dval(sigma, th):
        if abs(_doubled(sigma, "sigma")) > two_j:
            return np.zeros_like(th)
        return wigner_d(j, -m, sigma, th)

    rows = []
    for name, sigma, kind in _theta_relations(j, m):
        low, high = ladder_coefficients(j, sigma)
        rhs = 0.5 * (
            (low if kind == "dtheta" else -low) * dval(sigma - 1.0, thetas)
            - high * dval(sigma + 1.0, thetas)
        )
        if kind == "dtheta":
            lhs = wigner_d_dtheta(j, -m, sigma, thetas)
            lhs_fd = (
                wigner_d(j, -m, sigma, thetas + fd_step)
                - wigner_d(j, -m, sigma, thetas - fd_step)
            ) / (2.0 * fd_step)
        else:
            # (i d_phi - sigma cos)/sin applied to D_sigma, with the
            # exp(i m phi) factor stripped: i d_phi -> -m
            weight = (-mf - sigma * np.cos(thetas)) / np.sin(thetas)
            lhs = weight * dval(sigma, thetas)
            lhs_fd = lhs
        rows.append(
            {
                "relation": name,
                "residual": float(np.abs(lhs - rhs).max()),
                "residual_fd": float(np.abs(lhs_fd - rhs).max()),
                "fd_vs_analytic": float(np.abs(lhs - lhs_fd).max()),
            }
        )
    return rows
