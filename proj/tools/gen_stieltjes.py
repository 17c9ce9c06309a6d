#!/usr/bin/env python3
"""Print the Stieltjes constants s_0..s_{n-1} as C++ literals (25 digits)."""
import sys
import mpmath

mpmath.mp.dps = 40
n = int(sys.argv[1]) if len(sys.argv) > 1 else 20
for j in range(n):
    print(f"    {mpmath.nstr(mpmath.stieltjes(j), 25, min_fixed=-100, max_fixed=100)},  // s_{j}")
