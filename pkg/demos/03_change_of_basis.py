"""Evolution operators attached to other natural bases.

For a natural basis given by G, the new evolution operator has matrix
G^-1 A G^(2) in the new basis and A G^(2) G^-1 in the old one.
Run: python demos/03_change_of_basis.py
"""

from evokit import EvolutionAlgebra, Field, Matrix
from evokit.morphism import conjugate_operator_of_automorphism, operator_in_new_basis, same_operator_as_L
from evokit.opset import scaled_form_decompose

Q = Field.rational()
K2 = Field.tower(2)

# %% Proportional columns: the new operator kills e_1.
E = EvolutionAlgebra.from_rows([[1, 1], [2, 2]], Q)
G = Matrix([[1, -1], [1, 1]], Q)
pair = operator_in_new_basis(E, G)
print("old-basis operator:", pair.old_basis.to_strings())
print("same map as L?    ", same_operator_as_L(E, G))
print("A Diag(lam), lam = ", [str(x) for x in scaled_form_decompose(E, pair.old_basis)])

# %% For an automorphism the new operator is just G A G^-1.
A = [[1, 1, 1], ["-i/2", "-i/2", "-i/2"], ["-i/2", "-i/2", "-i/2"]]
G = [["5/3", "-4/3*i", 0], [0, 0, 1], ["-4/3*i", "-5/3", 0]]
E, G = EvolutionAlgebra.from_rows(A, K2), Matrix(G, K2)
conj = conjugate_operator_of_automorphism(E, G)
for row in conj.matrix.to_strings():
    print("  ", row)
print("same map as L?", conj.same_map)
