"""Simultaneous approximation bounds which k can be large.

Bennett's theorem on rational approximation to sqrt(1 + a_i/N) gives a
lower bound that clashes with the upper bound coming from a solution, once
-d_k is large.  Evaluated at k = 6 this caps -d_k, so only k <= 5 remain.
"""

from diophtuple import sequences as sq
from diophtuple.bounds import chain

r = chain(6)
print("gamma  =", r.gamma)
print("lambda =", f"{float(r.lam):.12f}", "(< 2:", r.lam_below_two, ")")
print("coefficient of z^(2 - lambda):", float(r.exact.coefficient))
print("quartic root threshold:", f"{float(r.quartic_root_bound):.8f}")
print("so -d_k <=", r.dk_bound)
print()
for k in range(7):
    print(f"  -d_{k} = {-sq.d(k):8d}", "(excluded)" if -sq.d(k) > r.dk_bound else "")
print("k_max =", r.k_max)

# the chain only applies when N = -3 d_k exceeds 3^9
for k in (4, 5):
    print(f"chain({k}) applicable:", chain(k).applicable)
