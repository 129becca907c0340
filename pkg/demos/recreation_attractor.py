"""Dynamical purification: any qubit is pulled onto the same pure state.

Near half of the revival phase the cavity decouples from the qubit and the
qubit lands on the attractor (|e> + i e^{i alpha}|g>)/sqrt(2), with alpha set
by the phase of the complex contrast. The pull works for every initial
inversion s, including a totally unpolarized source: the dynamics itself
purifies the qubit, dumping the entropy into the cavity field. The peak
purity grows with the field brightness nbar.
"""

import math

from purityswap import (
    InterferometerConfig,
    locate_recreation,
    purity_exchange_bounds,
    summarize,
)

print("peak qubit purity vs field brightness (s = 0):")
print("nbar   theta*   theta*/sqrt(nbar)   P_Q peak   attractor fidelity")
for nbar in (5.0, 10.0, 20.0, 40.0):
    r = locate_recreation(nbar, 0.0)
    print(f"{nbar:4.0f}  {r.theta_star:7.3f}  {r.ratio:17.3f}  {r.p_q_peak:9.4f}"
          f"  {r.attractor_fid:17.4f}")

print()
print("the located peaks sit near half the nominal recreation phase")
print("sqrt(nbar); the measured location is what the package reports.")

print()
print("robustness against the initial preparation at nbar = 20:")
print("   s   theta*    P_Q peak   attractor fidelity")
for s in (1.0, 0.5, 0.0, -1.0):
    r = locate_recreation(20.0, s)
    print(f"{s:4.1f}  {r.theta_star:7.3f}  {r.p_q_peak:9.4f}  {r.attractor_fid:17.4f}")

r = locate_recreation(20.0, 0.0)
summary = summarize(InterferometerConfig(s=0.0, nbar=20.0, theta=r.theta_star))
check = purity_exchange_bounds(summary.p_q, summary.p_m)
print()
print(f"at the s = 0 peak: P_Q = {summary.p_q:.4f}, P_M = {summary.p_m:.4f}")
print(f"purity-exchange bounds hold with slacks "
      f"({check.left_slack:.4f}, {check.right_slack:.4f}): as the qubit")
print("approaches purity 1, the bounds force the field toward purity 1/2.")
print()
alpha = math.degrees(math.atan2(summary.contrast.imag, summary.contrast.real))
print(f"attractor phase alpha = arg(C) = {alpha:.1f} degrees; since alpha is an")
print("externally controllable field phase, this doubles as deterministic")
print("preparation of a chosen pure superposition from a mixed source.")
