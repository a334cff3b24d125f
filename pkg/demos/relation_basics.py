"""Linear relations as subspaces of X x Y: parts, composition and sums."""
from linrel import Matrix, compose, diagonal, from_operator, from_pairs, inverse, span
from linrel import pointwise_sum, subspace_sum

A = from_operator(Matrix.from_rows([[1, 0], [1, 1]]))
B = from_operator(Matrix.from_rows([[1, 1], [0, 0]]))
print("A B =", compose(A, B))  # B applied first

# a relation that is not an operator: the vertical line over the origin
V = from_pairs([((0, 0), (1, 0))], 2, 2)
print("mul V:", V.mul, " dom V:", V.dom)

# inverses always exist; the inverse of a singular matrix is multivalued
Binv = inverse(B)
print("B^-1 =", Binv)
print("mul B^-1 = ker B:", Binv.mul == B.ker)

# pointwise sum keeps only the common domain, the graph sum adds pairs
D = diagonal(span([(1, 1)], 2))
print("A + D:", pointwise_sum(A, D))
print("A +^ D:", subspace_sum(A, D))

# equality is structural: the same subspace written two ways
print(compose(inverse(A), A) == diagonal(span([(1, 0), (0, 1)], 2)))
