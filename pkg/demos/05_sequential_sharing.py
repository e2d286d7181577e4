"""How many sequential Bobs can each beat the noncontextual bound."""

import math

from dimwit.observables import anticommuting_family, paper_bob_set
from dimwit.sharing import degraded_value, simulate_sequence, thresholds
from dimwit.witness import derive_alice, optimal_bound, pnc_bound

# closed-form degradation against explicit state updates, anticommuting Bobs
n = 5
bob = anticommuting_family(n)
lams = [0.5, 0.6, 0.7]
sim = simulate_sequence(n, bob.dim, bob, derive_alice(n, bob), lams)
ref = [degraded_value(optimal_bound(n), n, lams[: k + 1]) for k in range(3)]
print("simulated  ", [round(v, 6) for v in sim])
print("closed form", [round(v, 6) for v in ref])

# critical sharpness with every earlier Bob sitting at his own threshold
bases = {
    "qubit": 8 * (math.sqrt(5 + 2 * math.sqrt(2)) + math.sqrt(5 - 2 * math.sqrt(2))),
    "two-qubit": 16 * math.sqrt(5),
}
print(f"\nn=5, bound {pnc_bound(5)}")
for name, base in bases.items():
    tr = thresholds(5, base)
    print(f"{name:>10}: {tr.max_bobs} Bobs, lambda_k =", ", ".join(f"{lam:.4f}" for lam in tr.thresholds))

# the qubit set does not anticommute, so later Bobs see more than the closed form
bob = paper_bob_set(5, 2, "qubit_max")
lams = [0.6, 0.8, 0.9]
sim = simulate_sequence(5, 2, bob, derive_alice(5, bob), lams)
ref = [degraded_value(bases["qubit"], 5, lams[: k + 1]) for k in range(3)]
print("\nqubit set, simulated minus closed form:", ", ".join(f"{a - b:+.4f}" for a, b in zip(sim, ref)))
