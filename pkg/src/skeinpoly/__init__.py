"""Exact kernel for stated skein algebras of thickened marked polygons.

Everything is computed over the Laurent ring of v = q^(1/2) with rational
coefficients, or over its specialization at a primitive root of unity of odd
order N (N = 1 being the classical, commutative case). No floats anywhere.

Module map:
    scalars    exact Laurent / cyclotomic coefficient arithmetic
    chebyshev  first-kind Chebyshev polynomials and threading
    polydiag   planar stated-tangle diagrams, skein relations, normal forms
    polyalg    the algebra structure: stacking product, unit, disjoint union
    frobenius  the cabling map from the classical algebra, module action
    maps       splitting, add-marking, half-twist, triangle gluing
    reduced    character points, representation-reduced modules, ranks
    torus      product-to-sum oracle for the torus (centrality witness)
    cli        command-line surface with machine-readable JSON reports
"""

__version__ = "0.1.0"
