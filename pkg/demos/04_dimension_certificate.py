"""Certifying the minimal local dimension from an observed Bell value."""

from dimwit.observables import paper_bob_set
from dimwit.seesaw import SeesawConfig, max_table
from dimwit.witness import certify_dimension, witness_report

n = 5
table = max_table(n, SeesawConfig(restarts=30))
print("maximum per qubit count:", {m: round(v, 6) for m, v in table.items()})

# a noisy two-qubit experiment: visibility v scales the ideal value
ideal = witness_report(n, paper_bob_set(n, 4), table)
print(f"ideal two-qubit value {ideal.achieved_value:.4f}, certified dimension {ideal.certified_min_dim}")
for v in (0.40, 0.50, 0.90, 0.95, 0.96, 0.98, 1.0):
    value = v * ideal.achieved_value
    cert = certify_dimension(n, value, table)
    print(f"visibility {v:.2f}: value {value:8.4f} -> dim >= {cert.dim}, contextual={cert.contextual}")
