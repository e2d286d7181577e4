"""Classical, noncontextual and quantum bounds of the n-bit witness."""

import itertools

import numpy as np

from dimwit import combinatorics as comb
from dimwit.witness import local_bound, optimal_bound, pnc_bound, success_probability

# the 2**(n-1) bit-string pairs that label Alice's settings
for n in (2, 3):
    print(f"n={n} pairs:", [(comb.bits(p.x_i, n), comb.bits(p.x_j, n)) for p in comb.gen_domain(n)])

# local bound by brute force for n=3: Alice and Bob answer deterministically
n = 3
signs = comb.sign_table(n)
best = max(
    int(np.dot(a, signs @ np.array(b)))
    for a in itertools.product((1, -1), repeat=2 ** (n - 1))
    for b in itertools.product((1, -1), repeat=n)
)
print(f"\nbrute force local value n=3: {best} (closed form {local_bound(3)})")

print(f"\n{'n':>2} {'local':>6} {'pnc':>5} {'quantum':>10} {'p_pnc':>7} {'p_quantum':>9}")
for n in range(2, 9):
    q = optimal_bound(n)
    print(f"{n:>2} {local_bound(n):>6} {pnc_bound(n):>5} {q:>10.4f} "
          f"{success_probability(pnc_bound(n), n):>7.4f} {success_probability(q, n):>9.4f}")
