"""Registry mapping a :class:`ConeId` to its generator."""

from __future__ import annotations

from .classical import horn_system, lr_mn_system
from .coneid import ConeId
from .involution import a_system, b_system, e1_system, e2_system, s_system, sing_system, so_odd_system, t_system
from .polyhedra import InequalitySystem

__all__ = ["build_system"]

_BUILDERS = {
    "horn": lambda c: horn_system(c["n"], c.variant),
    "lr": lambda c: lr_mn_system(c["m"], c["n"], c.variant),
    "e1": lambda c: e1_system(c["n"], c.variant),
    "e2": lambda c: e2_system(c["n"], c.variant),
    "sing": lambda c: sing_system(c["p"], c["q"], c.variant),
    "so_odd": lambda c: so_odd_system(c["q"], c.variant),
    "a": lambda c: a_system(c["p"], c["q"], c.variant),
    "b": lambda c: b_system(c["n"], c.variant),
    "s": lambda c: s_system(c["p"], c["q"], c.variant),
    "t": lambda c: t_system(c["p"], c["q"], c.variant),
}


def build_system(cone: ConeId | str, variant: str = "", **params) -> InequalitySystem:
    """Generate the system for ``cone`` (a ConeId, or a kind name plus parameters)."""
    if not isinstance(cone, ConeId):
        cone = ConeId.make(cone, variant, **params)
    return _BUILDERS[cone.kind](cone)
