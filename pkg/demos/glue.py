"""
Gluing A2 and Z v along the discriminant group
==============================================

"""

from cubic_k3.lattice import a2, direct_sum, z, disc_group_form, enumerate_even_overlattices, finite_form_isomorphic
from cubic_k3.periods import gamma_d

# d = 14: v has square -42, A2 + Z v has discriminant 126 = 9 * 14
base = direct_sum(a2(), z(-42))
print(disc_group_form(base))

# Each isotropic subgroup of the discriminant form gives an even overlattice
for o in enumerate_even_overlattices(base, 9):
    print("index", o.index, "glue", o.glue_description or "-", "gram", o.lattice.gram)

# The two index-3 choices are exchanged by v -> -v; both match Gamma_14
gamma = gamma_d(14).sublattice.lattice()
for o in enumerate_even_overlattices(base, 3):
    if o.index == 3:
        print(finite_form_isomorphic(disc_group_form(o.lattice), disc_group_form(gamma)))
