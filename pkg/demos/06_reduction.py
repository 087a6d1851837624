"""Baker-Davenport reduction brings 10^16 down to single digits.

A convergent p/q of theta = log(2 + sqrt 3) / log(5 + 2 sqrt 6) with q > 6M
shows that no m between a small new bound and M satisfies the inequality.
Repeating the step shrinks the bound further.
"""

from diophtuple.reduction import bd_iterate_outcomes, k1_problem, scan_inequality

prob = k1_problem(10**16)
M = prob.M
for out in bd_iterate_outcomes(prob):
    print(f"M = {M}: q = {out.q}, eps >= {float(out.eps.lower):.6f}  ->  M = {out.new_M}")
    M = out.new_M

# what remains is small enough to scan directly
print("solutions (m, n) with m <=", M, ":", scan_inequality(prob.with_M(M), M))
