"""Explicit Bob observables: SOS bound, derived Alice and parity obliviousness."""

import numpy as np

from dimwit.linalg import herm_eig, max_entangled
from dimwit.observables import SUPPORTED_VARIANTS, anticomm_table, paper_bob_set
from dimwit.witness import (
    alice_states,
    build_operator,
    derive_alice,
    omegas,
    parity_residuals,
    quantum_value,
    sos_upper_bound,
    state_parity_residual,
)

np.set_printoptions(precision=3, suppress=True)

# n=3 with the three Pauli matrices: every C_i has norm sqrt(3)
bob = paper_bob_set(3, 2)
alice = derive_alice(3, bob)
inst = build_operator(3, alice, bob)
print("n=3 omegas:", omegas(bob))
print("value on the maximally entangled state:", quantum_value(inst, max_entangled(2)))

# Bob's conditional states hide the parity of all three bits
enc = alice_states(3, max_entangled(2), alice)
print("state-level parity residual for s=111:", state_parity_residual(3, enc.states, 0b111))

# every explicit set: SOS bound, top eigenvalue, worst parity constraint
print(f"\n{'set':<26} {'sos':>9} {'top eig':>9} {'worst residual':>15}")
for n, d, variant in SUPPORTED_VARIANTS:
    bob = paper_bob_set(n, d, variant)
    alice = derive_alice(n, bob)
    top = herm_eig(build_operator(n, alice, bob).operator)[0][0]
    worst = max(parity_residuals(n, alice).values(), default=0.0)
    print(f"n={n} d={d} {variant:<14} {sos_upper_bound(n, bob):>9.4f} {top:>9.4f} {worst:>15.2e}")

# the n=4 qubit set reaches its maximum only with B3 = B4, which breaks two of the four constraints
print("\nn=4 qubit anticommutators:\n", anticomm_table(paper_bob_set(4, 2, "qubit_max")))
print(parity_residuals(4, derive_alice(4, paper_bob_set(4, 2, "qubit_max"))))
