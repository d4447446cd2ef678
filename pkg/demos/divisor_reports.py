"""
Per-discriminant reports
========================

"""

from cubic_k3.periods import divisor_report, gamma_d, k_d_gram
from cubic_k3.cli import render_report

# d = 14 is the Pfaffian case, 18 has no spherical class, 24 has one
for d in (14, 18, 24):
    print(render_report(divisor_report(d), "text"))
    print()

# Gamma_d is obtained by saturating A2 + Z v in rank 24; its discriminant is d
for d in (8, 12, 14, 20, 26):
    g = gamma_d(d)
    print(d, "index", g.sat_index, "disc", g.disc, "K_d", k_d_gram(d).gram)
