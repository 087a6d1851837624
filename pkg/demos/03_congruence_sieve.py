"""Congruences rule out intersections nu_m = omega_n with small n.

Modulo -2d_k the sequences alternate between +z0 and -z0; modulo 8 d_k^2
they follow closed forms in the index.  Comparing the two pins down the
index pairs that can possibly meet.
"""

from diophtuple.congruence_sieve import (
    SieveContext,
    lemma_small_prediction,
    residue_pattern,
    scan_small_n,
)
from diophtuple.pell import nu_sequences

k = 4
ctx = SieveContext.from_k(k)
(s, _) = nu_sequences(k)
pattern = residue_pattern(s, ctx.mod_small, 8)
print(f"nu residues mod {ctx.mod_small}:", pattern)
print("predicted:            ", [lemma_small_prediction(s.cls.z0, i, ctx.mod_small) for i in range(8)])

# at k = 6 every candidate (m, n) in the small-n range is eliminated
for k in range(6, 9):
    size, survivors = scan_small_n(k)
    print(f"k={k}: {size} candidate pairs, {len(survivors)} survive")
