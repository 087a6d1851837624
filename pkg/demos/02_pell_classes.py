"""Extending {1, 3, d_k} by d means solving two Pellian equations at once.

    d_k d + 1 = z^2,  d + 1 = -2x^2,  3d + 1 = -2y^2

Eliminating d gives z^2 - (-2 d_k) x^2 = 1 - d_k and a companion equation
in y.  Each has finitely many solution classes; every solution is a unit
multiple of one fundamental solution.
"""

from diophtuple import sequences as sq
from diophtuple.pell import (
    e120_problem,
    fundamental_classes,
    fundamental_unit,
    nu_sequences,
    omega_sequences,
    solve_below,
)

for k in range(1, 6):
    p = e120_problem(k)
    u = fundamental_unit(p.D)
    classes = fundamental_classes(p)
    print(f"k={k}: z^2 - {p.D} x^2 = {p.N}, unit {u.u} + {u.v} sqrt({p.D})")
    for c in classes:
        print(f"    class {c.sign or ' '}: (z0, x0) = ({c.z0}, {c.x0})")
    # the fundamental z0 is always c_(k-1) + 2
    assert all(c.z0 == sq.c(k - 1) + 2 for c in classes)

# brute force agrees with the class enumeration
p = e120_problem(3)
print()
print("all solutions of", p, "with z <= 10^7:")
print("   ", solve_below(p, 10**7))

# the z-coordinates in each class follow a second-order recurrence
print()
k = 3
for s in nu_sequences(k):
    print(f"nu{s.sign}: ", s.z_terms(5))
for s in omega_sequences(k):
    print(f"omega{s.sign}:", s.z_terms(5))
