"""Computational verification of Noether's problem constructions for p-groups with a
cyclic subgroup of index p^2.

Subpackages and modules:

- ``fpgroups``: family presentations and their permutation realizations
- ``cyclotomic``: exact arithmetic in cyclotomic fields and in Z[omega]
- ``regrep``: the regular representation, eigenvectors and monomial tables
- ``monomial``: monomial automorphisms, quotients and fixed lattices
- ``birational``: rational functions, the t-linearization and Moebius substitutions
- ``zmodule``: Z[pi]-lattices and splitting of short exact sequences
- ``certpipe``: case scripts, hypothesis gates and certificate reports
"""

__version__ = "0.1.0"
