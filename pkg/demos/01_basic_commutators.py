# Basic commutators and the Witt count
# ====================================
#
# A free group on d letters has a lower central series whose weight-n layer is
# free abelian; Hall's basic commutators of weight n form a basis of it and the
# Witt formula counts them.

from nilmult import Alphabet, enumerate_basic, mobius, witt

# %% Moebius values feeding the count
print([mobius(m) for m in range(1, 13)])

# %% The layers on two letters x < y
xy = Alphabet(["x", "y"])
for w in range(1, 6):
    layer = enumerate_basic(xy, w)
    print(w, witt(w, 2), [str(b) for b in layer])

# %% A table of chi_n(d): rows are weights, columns alphabet sizes
for n in range(1, 7):
    print(n, [witt(n, d) for d in range(6)])

# %% Each count agrees with the enumeration
abc = Alphabet("abc")
assert all(len(enumerate_basic(abc, n)) == witt(n, 3) for n in range(1, 7))
