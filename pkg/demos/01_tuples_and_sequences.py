"""The objects: tuples in Z[sqrt(-2)] built on {1, 3}.

{1, 3, 8, 120} is the classical Fermat quadruple; over Z[sqrt(-2)] the pair
{1, 3} also extends by negative integers, through the sequence d_k.
"""

from diophtuple import sequences as sq
from diophtuple.quad_ring import verify_tuple

# Fermat's set works in Z, hence in any ring containing Z
rep = verify_tuple([1, 3, 8, 120])
print("{1, 3, 8, 120} valid:", rep.valid)
for p in rep.pairResults:
    print("  ", rep.elements[p.i], "*", rep.elements[p.j], "+ 1 =", p.value)

# the negative extensions: d_k + 1 and 3 d_k + 1 are -2 times a square,
# i.e. squares of multiples of sqrt(-2)
print()
print(" k        c_k        d_k    s_k    t_k")
for k in range(7):
    print(f"{k:2d} {sq.c(k):10d} {sq.d(k):10d} {sq.s(k):6d} {sq.t(k):6d}")

print()
print("{1, 3, d_1, d_2}:", verify_tuple([1, 3, sq.d(1), sq.d(2)]).valid)
print("{1, 3, d_2, d_3}:", verify_tuple([1, 3, sq.d(2), sq.d(3)]).valid)
print("{1, 3, d_1, d_3}:", verify_tuple([1, 3, sq.d(1), sq.d(3)]).valid)

# identities behind the construction, exact up to index 100
report = sq.check_identities(100)
print()
print("identities checked up to 100:", report.ok)
for name in report.checked:
    print("  ", name)
