"""Factoring R = S X through a given S, over the rationals."""
from linrel import Matrix, compose, from_operator, from_pairs, subspace_sum
from linrel.exceptions import CriterionError
from linrel.factorization import douglas_criterion, douglas_operator, douglas_relation, douglas_witness

S = from_operator(Matrix.from_rows([[1, 2], [0, 0], [3, 6]]))
X = from_operator(Matrix.from_rows([[1, -1], ["1/2", 4]]))
R = compose(S, X)

T = douglas_operator(R, S)
print("solution:", T)
print("recomposes:", compose(S, T) == R)

w = douglas_witness(R, S)
print("witness exact:", w.exact)

# a vertical pair pushes ran R outside ran S and also grows mul R
bad = subspace_sum(R, from_pairs([((0, 0), (0, 1, 0))], 2, 3))
print(douglas_criterion(bad, S))
try:
    douglas_relation(bad, S)
except CriterionError as exc:
    print("rejected:", exc.failed)
