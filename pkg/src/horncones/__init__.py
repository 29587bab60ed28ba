"""Exact inequality descriptions of eigenvalue and singular-value cones.

Generators return :class:`InequalitySystem` objects with integer relations
and provenance; membership is exact over the rationals. The ``oracle``
subpackage checks the systems against random matrices.
"""

from .classical import HornTriple, horn_member, horn_system, horn_triples, lr_mn_system
from .combinatorics import (
    Chamber,
    IndexSet,
    Partition,
    PolarizedSet,
    SpectrumVector,
    complement,
    hat_nn,
    hat_pq,
    lam,
    mu,
    natural,
    oc,
    opposite,
    reverse_negate,
    subsets,
)
from .compare import semantically_equal
from .coneid import ConeId
from .cones import build_system
from .errors import (
    BadRange,
    BlockMismatch,
    DimensionMismatch,
    HornConesError,
    NotConverged,
    NotHermitian,
    NotNested,
    UnsupportedCone,
    UnsupportedEmbedding,
    ZeroRelation,
)
from .fixtures import FIXTURES, load_fixture
from .involution import (
    a_system,
    b_system,
    e1_system,
    e2_system,
    s_system,
    sing_stabilizes,
    sing_system,
    sing_triples,
    so_odd_system,
    t_system,
)
from .lr import LRCache, lr_coefficient, lr_nonzero, lr_subset
from .polyhedra import EQ, GE, InequalitySystem, LinearRelation, VariableBlock, from_json, member, to_json, to_text

__all__ = [
    "HornTriple",
    "horn_member",
    "horn_system",
    "horn_triples",
    "lr_mn_system",
    "Chamber",
    "IndexSet",
    "Partition",
    "PolarizedSet",
    "SpectrumVector",
    "complement",
    "hat_nn",
    "hat_pq",
    "lam",
    "mu",
    "natural",
    "oc",
    "opposite",
    "reverse_negate",
    "subsets",
    "semantically_equal",
    "ConeId",
    "build_system",
    "BadRange",
    "BlockMismatch",
    "DimensionMismatch",
    "HornConesError",
    "NotConverged",
    "NotHermitian",
    "NotNested",
    "UnsupportedCone",
    "UnsupportedEmbedding",
    "ZeroRelation",
    "FIXTURES",
    "load_fixture",
    "a_system",
    "b_system",
    "e1_system",
    "e2_system",
    "s_system",
    "sing_stabilizes",
    "sing_system",
    "sing_triples",
    "so_odd_system",
    "t_system",
    "LRCache",
    "lr_coefficient",
    "lr_nonzero",
    "lr_subset",
    "EQ",
    "GE",
    "InequalitySystem",
    "LinearRelation",
    "VariableBlock",
    "from_json",
    "member",
    "to_json",
    "to_text",
]

__version__ = "0.1.0"
