"""Clique and minimum-union translations, round-tripped.

Run: python demos/05_reductions.py
"""

from pmdm import (
    Graph,
    MuInstance,
    bruteforce_pmdm,
    clique_to_pmdm,
    decide_k_pmdm,
    extract_mu_solution,
    mu_bruteforce,
    mu_to_pmdm,
    pmdm_to_mu,
)

# A triangle with a tail: the 3-clique exists, a 4-clique does not.
graph = Graph(5, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5)])
print("graph edges:", sorted(graph.edges))
for k in (3, 4):
    inst = clique_to_pmdm(graph, k)
    print(f"k={k}: dictionary {list(inst.dictionary)} z={inst.threshold}"
          f" -> decision {decide_k_pmdm(inst, k)}")
print()

# Choosing z sets with the smallest union is the same problem in disguise.
mu = MuInstance(5, [{1}, {1, 2, 3}, {1, 3, 5}, {3}, {3, 4, 5}, {4}, {4, 5}, {5}], 4)
best = mu_bruteforce(mu)
print(f"pick {mu.threshold} of {len(mu.sets)} sets: indices {best.indices},"
      f" union {sorted(best.union)} (size {len(best.union)})")

inst = mu_to_pmdm(mu)
mask = bruteforce_pmdm(inst)
print(f"as strings: query {inst.query}, optimal mask size {len(mask)}"
      f" = optimal union size {len(best.union)}")
chosen = extract_mu_solution(mu, mask)
print("sets recovered from the mask:", [sorted(mu.sets[i]) for i in chosen])
print()

# And back: a string instance becomes a set-selection instance.
mu2 = pmdm_to_mu(inst)
print("round trip keeps the optimum:",
      len(mu_bruteforce(mu2).union) == len(mask))
