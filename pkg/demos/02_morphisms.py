"""Natural bases and automorphisms via matrix criteria.

A matrix G gives a natural basis when A(G*G) = 0 and G is invertible; it is
an endomorphism when moreover A G^(2) = G A.
Run: python demos/02_morphisms.py
"""

from evokit import EvolutionAlgebra, Field, Matrix
from evokit.matrix import diag
from evokit.morphism import diagonal_automorphisms, is_endomorphism, symmetric_group_in_aut

Q = Field.rational()
K3 = Field.tower(3)

# %% A failing candidate names the first broken condition.
E = EvolutionAlgebra.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]], Q)
G = Matrix([[1, 0, 1], [0, 1, 0], [0, 0, 1]], Q)
print(is_endomorphism(E, G).describe())

# %% The swap algebra e1^2 = e2, e2^2 = e1 over Q(i, sqrt 3).
E = EvolutionAlgebra.from_rows([[0, 1], [1, 0]], K3)
w = K3("-1/2 + 1/2*i*r")  # primitive cube root of unity
print("Diag(w, w^2):", is_endomorphism(E, diag([w, w * w], K3)).describe())

# All diagonal automorphisms solve lam_i = lam_j^2 wherever a_ij != 0.
S = diagonal_automorphisms(E)
for s in S.solutions:
    print("  ", tuple(str(x) for x in s))

# %% Over the rationals the same equations leave far fewer solutions.
E = EvolutionAlgebra.from_rows([[1, 1], [0, 0]], Q)
print("rational solutions:", diagonal_automorphisms(E).to_dict()["solutions"])

# %% Every permutation is an automorphism exactly for A = alpha J + beta I.
E = EvolutionAlgebra.from_rows([[5 if i == j else 2 for j in range(4)] for i in range(4)], Q)
print("S_4 in Aut(E):", symmetric_group_in_aut(E))
