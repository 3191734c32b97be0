"""Exact scalars in Q(i, sqrt d).

Every scalar in this package lives in a small tower field and is stored as
four rationals, so equality is exact and there is no rounding anywhere.
Run: python demos/01_scalars_and_fields.py
"""

from evokit import Field
from evokit.scalar import is_root_of_unity, minimal_polynomial, sqrt_in_field

K2 = Field.tower(2)  # Q(i, sqrt 2); the symbol r stands for sqrt 2
K3 = Field.tower(3)

# %% Parsing and printing round-trip through the same grammar.
lam = K2("1/3 + 2/3*i*r")
print("lambda          =", lam)
print("1 / lambda      =", lam.inverse())
print("as a float      =", lam.embed())

# %% Minimal polynomials are read off from the first linear dependency
# among powers; coefficients are listed constant term first.
print("minpoly(lambda) =", [str(c) for c in minimal_polynomial(lam)])

# A non-integral coefficient means lambda is not an algebraic integer,
# so no power of it can ever be 1.
print("root of unity?  ", is_root_of_unity(lam))

# %% Genuine roots of unity are detected with their exact order.
for text, field in [("i", K2), ("r/2 + i*r/2", K2), ("-1/2 + 1/2*i*r", K3)]:
    print(f"{text:>16} ->", is_root_of_unity(field(text)))

# %% Square roots are found only when they exist in the field.
print("sqrt(-1)  in K2:", sqrt_in_field(K2(-1)))
print("sqrt(1/2) in K2:", sqrt_in_field(K2("1/2")))
print("sqrt(r)   in K2:", sqrt_in_field(K2("r")))
