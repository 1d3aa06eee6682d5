# Rewriting brackets in the Hall basis
# ====================================
#
# Modulo the next term of the lower central series, a commutator of weight w is
# an integer combination of basic commutators.  ``expand`` does the rewriting.

from nilmult import Alphabet, Commutator, expand, left_normed, parse_bracket

xyz = Alphabet("xyz")

# %% Antisymmetry: [x,y] = -[y,x]
print(expand(parse_bracket("[x,y]", xyz)))

# %% One Jacobi step: [[z,y],x] is not basic because x < y
print(expand(parse_bracket("[[z,y],x]", xyz)))

# %% Left-normed commutators [e, g1, ..., gc]
print(left_normed("x", ["y", "x"], xyz))
print(left_normed("x", ["y", "z", "y"], xyz))

# %% Jacobi identity holds after expansion
u, v, w = (parse_bracket(s, xyz) for s in ("[y,x]", "z", "y"))
total = (
    expand(Commutator.bracket(Commutator.bracket(u, v), w))
    + expand(Commutator.bracket(Commutator.bracket(v, w), u))
    + expand(Commutator.bracket(Commutator.bracket(w, u), v))
)
print("Jacobi sum:", total)
