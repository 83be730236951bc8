"""Tour of atomic coherent states and their Q functions.

A two-level atom is a spin-1/2; rotating the upper level |+> by
g(n) = exp(-i phi Jz) exp(-i theta Jy) produces the coherent state |n>.
The Q function Q(n) = |<n|psi>|^2 is directly measurable: displace the atom
by g(n)^dagger and read out the upper-level population.
"""

import math

import numpy as np

from atombell import (
    SpinState,
    TwoAtomState,
    coherent_overlap,
    coherent_state,
    joint_q,
    make_direction,
    marginal_q,
    q_function,
    u_state,
)

print("=== spin-1/2 coherent states ===")
for theta, phi in ((0.0, 0.0), (math.pi / 3, 0.0), (math.pi / 2, math.pi / 2), (math.pi, 0.0)):
    n = make_direction(theta, phi)
    amps = coherent_state(0.5, n).amps
    print(f"theta = {theta:5.3f}, phi = {phi:5.3f}  ->  amps = ({amps[0]:.4f}, {amps[1]:.4f})")

print()
print("=== overlap law |<j;n1|j;n2>|^2 = ((1 + n1.n2)/2)^(2j) ===")
rng = np.random.default_rng(7)
n1 = make_direction(0.9, 0.4)
n2 = make_direction(2.1, 3.8)
cosang = float(n1.unit_vector @ n2.unit_vector)
for j in (0.5, 1.0, 1.5, 2.0, 2.5):
    measured = abs(coherent_overlap(j, n1, n2)) ** 2
    law = (0.5 * (1.0 + cosang)) ** (2 * j)
    print(f"j = {j}: overlap^2 = {measured:.12f}, law = {law:.12f}")

print()
print("=== Q function of the upper state vs. probe angle ===")
up = coherent_state(0.5, make_direction(0.0, 0.0))
for theta in np.linspace(0.0, math.pi, 7):
    q = q_function(up, make_direction(float(theta), 0.0))
    print(f"theta = {theta:5.3f}: Q = {q:.6f}  (cos^2(theta/2) = {math.cos(theta / 2) ** 2:.6f})")

print()
print("=== normalization: (2j+1)/(4 pi) * integral Q dOmega = 1 ===")
nodes, weights = np.polynomial.legendre.leggauss(24)
phis = np.linspace(0.0, 2.0 * math.pi, 32, endpoint=False)
for j in (0.5, 1.5):
    dim = int(round(2 * j)) + 1
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    state = SpinState(j, amps / np.linalg.norm(amps))
    total = 0.0
    for u, w in zip(nodes, weights):
        theta = math.acos(float(u))
        total += w * sum(q_function(state, make_direction(theta, float(p))) for p in phis)
    total *= 2.0 * math.pi / len(phis) * (2 * j + 1) / (4.0 * math.pi)
    print(f"j = {j}: quadrature gives {total:.15f}")

print()
print("=== joint Q function of the singlet ===")
singlet = u_state(math.pi)
print("Q12(n1, n2) depends only on the angle between the analyzers:")
for theta in np.linspace(0.0, math.pi, 5):
    n2 = make_direction(float(theta), 0.0)
    q12 = joint_q(singlet, make_direction(0.0, 0.0), n2)
    print(f"angle = {theta:5.3f}: Q12 = {q12:.6f}  ((1 - cos)/4 = {(1 - math.cos(theta)) / 4:.6f})")
print(f"marginals are flat: Q1 = {marginal_q(singlet, 1, make_direction(1.1, 2.2)):.6f} everywhere")

print()
print("=== product states factorize ===")
pair = TwoAtomState(np.kron(coherent_state(0.5, n1).amps, coherent_state(0.5, n2).amps))
probe1 = make_direction(0.5, 1.0)
probe2 = make_direction(2.5, 4.0)
print(f"Q12 = {joint_q(pair, probe1, probe2):.12f}")
print(f"Q1*Q2 = {marginal_q(pair, 1, probe1) * marginal_q(pair, 2, probe2):.12f}")
