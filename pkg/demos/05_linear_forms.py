"""Linear forms in three logarithms give an absolute bound on the index.

For k = 1 a solution produces a tiny value of
    m log(2 + sqrt 3) - n log(5 + 2 sqrt 6) + log(sqrt 2),
and Baker-Wustholz bounds how tiny it can be.  Together they bound m.
"""

from diophtuple.linear_forms import K1_FORM, bw_constant, h_prime, solve_m_logm

for a in K1_FORM.surds:
    print(f"h'({a}) =", f"{float(h_prime(a, K1_FORM.field_degree)):.10f}")

C = bw_constant(K1_FORM)
print("Baker-Wustholz constant C =", f"{float(C):.6e}")

res = solve_m_logm(C)
print("m < C log m  forces  m <", res.m0)
print("rounded up to a power of ten:", res.power_of_ten)
