"""
Dealing and reconstructing a secret
===================================

Share a secret bit string with the (8, 4) code, recover it from a
qualified coalition, and check that an unqualified coalition learns
nothing.
"""

import numpy as np

from polarss import BEC, build_code, deal, deal_string, reconstruct, reconstruct_string, security_audit
from polarss.errors import UnqualifiedError

spec = build_code(BEC(0.5), 3, 4)
rng = np.random.default_rng(7)  # fixed seed: fine for a demo, never for real secrets

d = deal(spec, 1, rng)
print("public values:", [(s.position, s.bit) for s in d.public_values])
print("member shares:", [(s.position, s.bit) for s in d.member_shares])

print("\n{1,2,7} full mode ->", reconstruct(spec, d.select([1, 2, 7])))
print("{4,6} + public values ->", reconstruct(spec, d.select([4, 6]), "effective", d.public_values))
try:
    reconstruct(spec, d.select([4, 6]))
except UnqualifiedError as exc:
    print("{4,6} alone ->", exc)

# posterior counts over all 16 information vectors
print("\naudit {4,6}:", security_audit(spec, [4, 6]).table())
print("audit {1,2,7} determined:", security_audit(spec, [1, 2, 7]).determined)

# a multi-bit secret uses fresh randomness for every bit
dealings = deal_string(spec, "10110", rng)
print("\nrecovered:", reconstruct_string(spec, [x.select([2, 4, 6]) for x in dealings]))
