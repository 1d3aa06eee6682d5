# Covering pairs and the triple relations
# =======================================

from nilmult import TripleSpec, check_lemma41, covering_pair_decision, PairSpec, parse_group_spec as G

# %% Existence of c-covering pairs
for n, k, c in [("Z/4", "Z/4", 2), ("1", "Z/6", 5), ("Z/2", "Z/2", 1), ("Z^2", "1", 1), ("Z/2", "1", 2)]:
    dec = covering_pair_decision(PairSpec(G(n), G(k)), c)
    print(f"N={n:5} K={k:5} c={c}: {dec.verdict:22} {dec.justification:30} M={dec.multiplier}")

# %% N = K + L inside G = N + K'; compare M(G,N) with M(G/K,N/K) and M(G,K)
triple = TripleSpec(K=G("Z/2"), L=G("Z/4"), K_complement=G("Z/8"))
for c in (1, 2):
    report = check_lemma41(triple, c)
    print(c, report["multipliers"])
    for cl in report["clauses"]:
        print("   ", cl["clause"], cl["lhs"], cl["relation"], cl["rhs"], cl["holds"])
