"""Wigner-function machinery and the operator reductions it certifies.

The spherical-wave substitution attaches one half-integer Wigner function
to each of the sixteen amplitude slots.  The theta-ladder recurrences are
what collapse every angular operator onto the same sixteen slots; this
script verifies them and then replays two of the slot reductions on a
random state, including one whose commonly printed transcription fails.
"""

import numpy as np

from rsdesitter import ansatz, wigner
from rsdesitter.ansatz import ModeLabel

print("theta-ladder recurrences (analytic derivative vs ladder right side)")
thetas = np.linspace(0.02, np.pi - 0.02, 100)
for j in (0.5, 1.5, 2.5):
    worst = 0.0
    for two_m in range(-int(2 * j), int(2 * j) + 1, 2):
        rows = wigner.recurrence_residuals(j, two_m / 2, thetas)
        worst = max(worst, max(r["residual"] for r in rows))
    co = wigner.angular_coefficients(j)
    print(f"  j={j}: a={co.a:.3f} b={co.b:.3f} c={co.c:.3f}  worst residual {worst:.2e}")

mode = ModeLabel(j=1.5, m_j=0.5, eps=1.3, mass=0.7)
rng = np.random.default_rng(0)
state = ansatz.random_state(mode, rng)
theta, phi = 0.9, 1.3

print("\ndirect matrix action vs closed slot formulas (random state):")
res = ansatz.verify_T_action(mode, state, theta, phi)
print(f"  transverse ladder: {max(res.values()):.2e}")
print(f"  boost block:       {ansatz.verify_j03_action(mode, state, theta, phi, omega=0.8):.2e}")
print(f"  angular operator:  {ansatz.verify_angular_operator(mode, state, theta, phi):.2e}")

chk = ansatz.verify_trace_constraint(mode, state, theta, phi)
print(f"\ngamma-trace contraction collapses to 4 relations: {chk.consistency:.2e}")
print("  relation values:", np.round(chk.relations, 3))

dstate = ansatz.random_state(mode, rng)
div = ansatz.verify_divergence_constraint(mode, state, dstate, 0.7, theta, phi)
print("\ncovariant-divergence assembly:")
print(f"  angular collapse residual:            {div.collapse_residual:.2e}")
print(f"  corrected relations residual:         {div.residual:.2e}")
print(f"  transcription without the slope term: {div.printed_variant_residual:.2e}  (fails)")
