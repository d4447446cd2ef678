"""
Which discriminants d are special
=================================

"""

# The three conditions on d, computed from prime factorizations of d/2
from cubic_k3.hassett import table, factorizations_k2d0, brauer_orders
from cubic_k3.cli import render_table

t = table(8, 60)
print(render_table(t, "text"))

# Every d passing the twisted condition is k^2 times a d0 passing the untwisted one
for d in t.members("star2prime"):
    print(d, factorizations_k2d0(d), "orders:", brauer_orders(d))

# Density over a longer range, using numpy for the bookkeeping
import numpy as np
from cubic_k3.hassett import cond_star2, cond_star2prime

ds = np.arange(8, 20001, 2)
k3 = np.array([cond_star2(int(d)) for d in ds])
twisted = np.array([cond_star2prime(int(d)) for d in ds])
print("fraction (**):", k3.mean().round(4), " fraction (**'):", twisted.mean().round(4))
