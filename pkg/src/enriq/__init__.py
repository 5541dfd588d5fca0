"""Exact-arithmetic verification toolkit for a family of Enriques surfaces.

Subpackages and modules:

* ``arith``      -- integer/rational utilities: certified primality, factorization
                    with an honest "incomplete" flag, Legendre and Hilbert symbols,
                    anisotropy of rank-4 diagonal forms over Q_p.
* ``towers``     -- iterated quadratic extension fields of Q with exact element
                    arithmetic, square testing, and validated automorphisms.
* ``conditions`` -- the eight sufficiency screens for a coefficient triplet
                    (a, b, c), plus nonsingularity and the search loop.
* ``lattice``    -- the rank-15 intersection lattice of the covering K3 surface,
                    its half-integer classes, Galois action, and F2 quotients.
* ``twotorsion`` -- the 2-torsion of the Jacobian of the branch curve as a
                    Galois module: kernel/image of pullback, submodule scans.
* ``geometry``   -- equation-level checks: branch points on the defining conic,
                    equivariance of the projection to P1 x P1, genus bookkeeping.
* ``residues``   -- quaternion symbols over function fields, residue profiles,
                    corestriction expansion on split covers, Faddeev
                    reconstruction of symbol algebras from residue data.
* ``cli``        -- the command-line entry point and report serialization.
"""

__version__ = "0.1.0"
