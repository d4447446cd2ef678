"""
A2 inside the Mukai lattice
===========================

"""

from cubic_k3.lattice import disc_group_form, invariants_compare, orthogonal_complement, Sublattice
from cubic_k3.periods import build_setup

# The fixed embedding and its complement, both checked when the setup is built
s = build_setup()
print("lambda1 =", s.lam1)
print("lambda2 =", s.lam2)
print("A2-perp signature:", s.a2_perp.signature[:2], " |det| =", abs(s.a2_perp.det))

# The discriminant forms of A2 and its complement are opposite
print("A2:     ", disc_group_form(s.a2_sublattice.lattice()))
perp = orthogonal_complement(s.a2_sublattice).lattice()
print("A2-perp:", disc_group_form(perp))

# The same lattice appears as h-perp in I_{2,21}
hperp = orthogonal_complement(Sublattice(s.i221, (s.h,))).lattice()
print("A2-perp vs h-perp:", invariants_compare(s.a2_perp, hperp))
