"""Split a bounded measure sequence into a small part and a controlled part.

Uses the bundled [0,ω] instance, prints the chosen schedule, the exceptional
set and the norms of each piece, then re-verifies every contract check.
"""
import json
from importlib import resources

from compactlines.decomposition import DecompositionConfig, decompose, verify_decomposition
from compactlines.functions import dual_norm, r_star
from compactlines.serialization import operator_from_json, parse_rat, sequence_from_json

doc = json.loads(resources.files("compactlines").joinpath("golden", "decompose_omega.json").read_text())
R = operator_from_json(doc["operator"])
seq = sequence_from_json(doc["sequence"], R.line)
cfg = DecompositionConfig(parse_rat(doc.get("eps", "1/10")), parse_rat(doc.get("epsp", "1/2")))

res = decompose(R.line, R, seq, cfg)
print(f"schedule n_k = {list(res.schedule)}")
print(f"exceptional points: {list(res.exceptional)}")
print(" n   |mu_n|   |mu'_n|   |nu_n|   |R*nu_n|")
for n in range(1, res.horizon + 1):
    nu = res.nu[n]
    print(f"{n:>2}   {str(seq[n].norm()):>6}   {str(res.mu_prime[n].norm()):>7}   "
          f"{str(nu.norm()):>6}   {dual_norm(R, r_star(R, nu))}")
checks = verify_decomposition(res, R)
print(f"\n{sum(c.passed for c in checks)}/{len(checks)} contract checks pass")
