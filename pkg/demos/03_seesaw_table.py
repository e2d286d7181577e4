"""Dimension-restricted maxima by seesaw, next to the printed table."""

import time

from dimwit.seesaw import SeesawConfig
from dimwit.tables import audit_n6_qubit, table1

config = SeesawConfig(restarts=50, rng_seed=0)
t0 = time.perf_counter()
rows = table1(config)
print(f"{'n':>2} {'d':>2} {'pnc':>4} {'maximum':>12} {'source':>12} {'printed':>8} {'delta':>8}")
for r in rows:
    print(f"{r.n:>2} {r.dim:>2} {r.pnc_bound:>4} {r.max_value:>12.6f} {r.source:>12} "
          f"{r.printed_value:>8.3f} {r.delta:>+8.4f}")
print(f"({time.perf_counter() - t0:.1f} s)")

# three routes to the six-bit qubit maximum
audit = audit_n6_qubit(config)
print("\nn=6 qubit:")
print(f"  seesaw                   {audit.seesaw_value:.8f}")
print(f"  12v2 + 8v6 + 12v10       {audit.closed_form:.8f}")
print(f"  printed observable set   {audit.printed_set_value:.8f}")
for k, v in audit.deltas().items():
    print(f"  {k:<28} {v:+.4f}")
