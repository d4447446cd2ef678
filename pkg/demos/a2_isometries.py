"""
The twelve isometries of A2
===========================

"""

from cubic_k3.periods import o_a2_group, phi0_action

rep = o_a2_group()
for g in rep.elements:
    print(g.matrix, "det", g.det, "disc", g.disc_action, "order", g.order)

# The kernel of the action on A2*/A2 = Z/3 is a copy of S3, with det as sign
print("kernel order", len(rep.kernel), "is S3:", rep.kernel_is_s3, "det = sign:", rep.det_is_sign)

# phi0 permutes the roots lambda1, -lambda1 - lambda2, lambda2 cyclically
p = phi0_action()
w = (1, 0)
for _ in range(3):
    print(w, "->", p.apply(w))
    w = p.apply(w)
