"""Products of two multivalued projections over F2^2."""
from linrel import GF, compose, diagonal, mp, span
from linrel import subspace as sub
from linrel.mp2 import (
    all_mps,
    mp2_membership_bruteforce,
    mp2_necessary,
    mp2_necessary_partial,
    mp2_products,
    mp_times_projection,
)
from linrel.laws import pool

F2 = GF(2)
mps = all_mps(F2, 2)
products = mp2_products(F2, 2)
print(len(mps), "multivalued projections,", len(products), "distinct products of two")

# every product factors as P Q0 with Q0 a projection carrying dom and ker
E, F = mps[3], mps[7]
w = mp_times_projection(E, F)
print("normal form checks:", w.check())

# the swap of coordinates is not a product of two
swap = [T for T in pool("relation", F2, 2) if T.is_operator and T.dom.is_full
        and T.ran.is_full and T.ker.is_zero and compose(T, T) == diagonal(sub.full(2, F2))
        and T != diagonal(sub.full(2, F2))]
print("swap in Mp2:", mp2_membership_bruteforce(swap[0]) is not None)

# the dimension bound for everywhere defined products and where it breaks
T = compose(mp(sub.coordinate([1], 2), sub.coordinate([0], 2)), diagonal(span([(1, 1)], 2)))
print("T =", T)
print("plain bound:", mp2_necessary(T), " with codim dom term:", mp2_necessary_partial(T))
violators = [T for T in products if not mp2_necessary(T)]
print(len(violators), "violators, all partially defined:", all(not T.dom.is_full for T in violators))
