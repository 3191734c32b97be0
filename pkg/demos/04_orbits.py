"""Iterating an automorphism: the family G^n A G^-n.

Finite orbits are detected exactly.  Infinite ones need a certificate,
which here comes from an eigenvalue of G that is not a root of unity.
Run: python demos/04_orbits.py
"""

from evokit import EvolutionAlgebra, Field, Matrix
from evokit.orbit import orbit_explore

K2 = Field.tower(2)

# %% A reflection: the orbit alternates between two matrices.
A = [[1, 1, 2], ["r-1", "r-1", "2*r-2"], [3, 3, 4]]
G = [["r/2", "r/2", 0], ["r/2", "-r/2", 0], [0, 0, 1]]
rep = orbit_explore(EvolutionAlgebra.from_rows(A, K2), Matrix(G, K2))
print(rep.status, "period", rep.period)
for m in rep.members:
    print("  ", m.to_strings())

# %% A rotation by an irrational angle never comes back.
A = [[1, 1, 1], ["-i/2", "-i/2", "-i/2"], ["-i/2", "-i/2", "-i/2"]]
G = [["5/3", "-4/3*i", 0], [0, 0, 1], ["-4/3*i", "-5/3", 0]]
rep = orbit_explore(EvolutionAlgebra.from_rows(A, K2), Matrix(G, K2), max_steps=200)
print(rep.status, "after", rep.distinct_count, "distinct matrices")
cert = rep.certificate
print("eigenvalue", cert.eigenvalue, "minpoly", [str(c) for c in cert.minimal_poly], cert.reason)
