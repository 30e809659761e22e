"""
Who can recover the secret?
===========================

Compute the access structure of the (8, 4) scheme with secret position 8
in both modes, and compare it with the coalitions read off single rows of
H_U.
"""

from polarss import BEC, build_code, is_qualified, minimal_access_sets, row_coalitions
from polarss.access import all_minimal_check, dictator_analysis, theorem1_count_check
from polarss.construction import generator_submatrix

spec = build_code(BEC(0.5), 3, 4)

# "full": every position except p holds a share
full = minimal_access_sets(spec, "full")
print("full mode, minimal access sets:", full.minimal_sets)
print("dictators:", set(dictator_analysis(full)) or "none")
print("coalitions from single H_U rows:", row_coalitions(spec, "full"))

# {1,...,7} from the row listing is qualified but not minimal
print("{1,2,7} qualified:", is_qualified(spec, [1, 2, 7]))

# "effective": frozen-position values are published by the dealer
eff = minimal_access_sets(spec, "effective")
print("\neffective mode, minimal access sets:", eff.minimal_sets)
print("row listing after dropping frozen positions:", row_coalitions(spec, "effective"))
print("public values alone are enough:", is_qualified(spec, [], "effective"))

# the weight-ratio condition on the equal-weight rows {4, 6, 7}
sub = generator_submatrix(spec)[:3]
print("\nrows {4,6,7}:", all_minimal_check(sub))
print("2^(3-1) minimal access sets for p=1:", theorem1_count_check(sub, 1))
