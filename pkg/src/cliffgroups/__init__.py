"""Exact computations with generalized Clifford groups in degenerate geometric algebras.

Multivectors have exact rational coefficients over Cl(p,q,r); see
:mod:`cliffgroups.algebra`. Group membership, norm functions and
factorization live in :mod:`cliffgroups.groups`, Lie algebras and their
tables in :mod:`cliffgroups.lie`.
"""

from .algebra import Multivector, Signature, parse_multivector
from .groups import GroupId, Mode, factor, member, norms

__all__ = ["GroupId", "Mode", "Multivector", "Signature", "factor", "member", "norms", "parse_multivector"]
