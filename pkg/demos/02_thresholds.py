"""Table of the smallest admissible gamma and the bound functions H and L.

The threshold grows without limit as c -> 0 or |B| -> 1. H is printed along
t in [-1, 1] to show it decreasing, L along k to show it increasing.
"""

import numpy as np

from lemni.criteria import H_func, L_func, gamma_threshold

print("gamma threshold for A=1, B=0")
for c in (0.1, 0.2, 0.5, 1.0):
    print(f"  c={c:<4} {gamma_threshold(1, 0, c):8.4f}")

print("\ngamma threshold at c=1")
for A, B in [(1, 0), (1, 0.5), (0.5, -0.5), (0.8, 0.3), (0, 0.9)]:
    print(f"  A={A:<4} B={B:<5} {gamma_threshold(A, B, 1):8.4f}")

A, B, c = 1.0, 0.5, 0.5
g = gamma_threshold(A, B, c)
t = np.linspace(-1, 1, 5)
print(f"\nH(t) at A={A}, B={B}, c={c}, gamma={g:g}:")
print("  " + "  ".join(f"{v:.5f}" for v in H_func(t, A, B, c, g)))
ks = np.array([1, 2, 5, 10, 100])
print("L(k) for k = 1, 2, 5, 10, 100:")
print("  " + "  ".join(f"{v:.5f}" for v in L_func(ks, A, B, c, g)))
