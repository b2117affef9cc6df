"""Classic (crisp) DEMATEL on a small direct-relation matrix.

Walks through the standard steps: average the expert matrices, normalize
by the largest row sum, close the influence chain with T = D(I - D)^-1,
and read off the prominence (R + D) and relation (R - D) indicators.
"""

import numpy as np

from rdematel.crisp import (
    average_expert_matrices,
    crisp_scores,
    normalize_crisp,
    solve_total_relation,
)

# Three experts rate pairwise influence among four factors on a 0..4 scale.
experts = [
    np.array([[0, 3, 2, 1], [1, 0, 3, 2], [2, 1, 0, 3], [1, 2, 1, 0]]),
    np.array([[0, 4, 2, 1], [2, 0, 3, 1], [2, 2, 0, 3], [0, 2, 1, 0]]),
    np.array([[0, 3, 3, 2], [1, 0, 2, 2], [3, 1, 0, 4], [1, 1, 2, 0]]),
]
factors = ["cost", "trust", "tech", "policy"]

z = average_expert_matrices(experts)
print("averaged direct-relation matrix Z:")
print(np.round(z, 3))

d = normalize_crisp(z)
print("\nnormalized matrix D (scaled by 1 / max row sum):")
print(np.round(d, 4))

t = solve_total_relation(d)
print("\ntotal-relation matrix T = D (I - D)^-1:")
print(np.round(t, 4))

scores = crisp_scores(t)
print("\nfactor    R (given)  D (received)  R+D      R-D      group")
for i, name in enumerate(factors):
    group = "cause" if scores.relation[i] > 0 else "effect"
    print(
        f"{name:<9} {scores.r[i]:>8.4f}  {scores.d[i]:>12.4f}  "
        f"{scores.prominence[i]:>7.4f}  {scores.relation[i]:>7.4f}  {group}"
    )
