"""
Sending shares over the channel
===============================

Monte-Carlo delivery of shares over the channel the code was built for.
Erased shares are lost, BSC and AWGN shares are used as received (hard
decision, no decoding).
"""

from polarss import BEC, BiAWGN, build_code, simulate
from polarss.construction import code_from_information_set

spec = build_code(BEC(0.5), 3, 4)
report = simulate(spec, [(4, 6), (1, 2, 7), (1, 2, 3, 4, 5, 6, 7)], trials=20_000, seed=1)
print(report.to_csv())

# more erasures, fewer successful coalitions
for eps in (0.1, 0.3, 0.5, 0.7):
    s = code_from_information_set(BEC(eps), 3, spec.A, spec.p)
    r = simulate(s, [(1, 2, 7)], 20_000, seed=2)
    print(f"eps={eps}: P(success of P1,P2,P7) = {r.coalition_success[(1, 2, 7)]:.3f}"
          f"  (all three survive: {(1 - eps) ** 3:.3f})")

# hard decisions on BI-AWGN(0.9) err with probability Q(1/0.9)
awgn = build_code(BiAWGN(0.9), 5, 16)
r = simulate(awgn, [], 20_000, seed=3, workers=4)
print("\nAWGN per-position error rate, first 8 positions:", [round(x, 4) for x in r.per_position_failure[:8]])
