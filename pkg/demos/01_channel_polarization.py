"""
Channel polarization on the binary erasure channel
==================================================

Split BEC(1/2) into N synthesized channels and watch the Bhattacharyya
parameters drift toward 0 and 1 as N grows.
"""

import numpy as np

from polarss import BEC, BiAWGN, bec_reliabilities, bhattacharyya, capacity
from polarss.construction import awgn_reliabilities, select_information_set

# the three channel families and their two figures of merit
for ch in (BEC(0.5), BEC(0.1)):
    print(f"{ch}: I = {capacity(ch):.4f}, Z = {bhattacharyya(ch):.4f}")
sigma = 0.9
print(f"awgn:{sigma}: I = {capacity(BiAWGN(sigma)):.4f}, Z = {bhattacharyya(BiAWGN(sigma)):.4f}")

# N = 8: the eight values of the (8, 4) example
z = bec_reliabilities(0.5, 8)
print("\nZ for N=8:", np.round(z, 4))
print("A for k=4:", select_information_set(z, 4))

# total capacity is conserved while the individual channels spread out
for N in (8, 64, 1024, 8192):
    z = bec_reliabilities(0.5, N)
    print(f"N={N:5d}  sum(1-Z)/N = {(1 - z).mean():.6f}  "
          f"good (Z<0.01) = {(z < 0.01).mean():.3f}  bad (Z>0.99) = {(z > 0.99).mean():.3f}")

# Gaussian approximation for the AWGN channel used in the (32, 16) example
scores = awgn_reliabilities(sigma, 32)
print("\nGA information set, sigma=0.9, N=32, k=16:")
print(select_information_set(scores, 16))
