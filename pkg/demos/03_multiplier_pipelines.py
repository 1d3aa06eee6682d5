# The c-nilpotent multiplier of a pair, three ways
# ================================================
#
# G = N + K is given by its two summands.  The closed formula needs the torsion
# orders to form one chain; the counting route and the lattice oracle work for
# any orders.

from nilmult import (
    MultiplierRequest,
    PairSpec,
    closed_form,
    count_general,
    nilpotent_multiplier,
    oracle,
    pair_multiplier,
    parse_group_spec as G,
)

# %% A chain-case pair: all three routes apply
req = MultiplierRequest(PairSpec(G("Z * Z/2"), G("Z/4")), c=2)
print("closed form  ", closed_form(req))
print("counting     ", count_general(req))
print("lattice      ", oracle(req))

# %% Which basic commutator produced which cyclic factor
r = count_general(req)
for label, o in zip(r.labels, r.primary_form):
    print(f"  {label:>16}  Z/{o}")

# %% Torsion orders out of chain order: N = Z/4 + Z/16, K = Z/8 + Z/32
for c in (1, 2):
    req = MultiplierRequest(PairSpec(G("Z/4 * Z/16"), G("Z/8 * Z/32")), c)
    result, report = pair_multiplier(req, verify=True)
    print(c, result.canonical.invariant_factors, report["ran"])

# %% N = G: the nilpotent multiplier of a group; c = 1 is the Schur multiplier
print(nilpotent_multiplier(G("Z/2 * Z/4 * Z/8"), 1))
print(nilpotent_multiplier(G("Z^3"), 2))
print(nilpotent_multiplier(G("Z/12"), 3))
