"""The whole argument in one call.

The pipeline bounds k, settles each small case by intersecting the two
solution sequences, certifies that no late intersection was missed, and
reports the conclusion.
"""

from diophtuple.intersect import small_case, theorem_pipeline

for k in range(6):
    res = small_case(k)
    print(f"k={k}:", ", ".join(res.table()), " extensions:", res.extensions)

rep = theorem_pipeline()
print()
print("k_max:", rep.data["k_max"])
print("complete:", rep.complete)
print(rep.data["conclusion"])

# the same run as a Markdown report
print()
print(rep.markdown[:600])
