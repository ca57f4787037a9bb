"""Invariant vector bundles on modular curves X(p): exact representation theory of
SL(2,p), equivariant Picard groups, flat unitary moduli of the (2,3,p) triangle
group and verification of explicit polynomial identities."""

__version__ = "0.1.0"

from .chartable import CharacterTable, character_table, verify_orthogonality  # noqa: E402
from .group import PSL2, SL2, build_group  # noqa: E402

__all__ = [
    "__version__",
    "SL2",
    "PSL2",
    "build_group",
    "character_table",
    "verify_orthogonality",
    "CharacterTable",
]
