"""Parameterized identifiers for the supported cones."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BadRange, UnsupportedCone

__all__ = ["ConeId", "KINDS", "VARIANTS"]

# kind -> names of its integer parameters
KINDS = {
    "horn": ("n",),
    "lr": ("m", "n"),
    "e1": ("n",),
    "e2": ("n",),
    "sing": ("p", "q"),
    "so_odd": ("q",),
    "a": ("p", "q"),
    "b": ("n",),
    "s": ("p", "q"),
    "t": ("p", "q"),
}

VARIANTS = ("nonzero", "strict-one", "weak", "fflp", "os-weak")

# variants each kind accepts; the first one is the default
KIND_VARIANTS = {
    "horn": ("nonzero", "strict-one"),
    "lr": ("nonzero", "strict-one"),
    "e1": ("nonzero", "strict-one"),
    "e2": ("nonzero", "strict-one"),
    "sing": ("nonzero", "strict-one", "weak"),
    "so_odd": ("nonzero", "strict-one", "weak"),
    "a": ("nonzero", "strict-one", "fflp", "os-weak"),
    "b": ("strict-one", "nonzero", "weak"),
    "s": ("strict-one", "nonzero", "weak"),
    "t": ("strict-one", "nonzero", "weak"),
}

ALIASES = {"lrmn": "lr", "soodd": "so_odd", "so": "so_odd", "e_i": "e1", "e_ii": "e2"}


@dataclass(frozen=True)
class ConeId:
    kind: str
    params: tuple[tuple[str, int], ...] = field(default=())
    variant: str = ""

    def __post_init__(self):
        kind = ALIASES.get(self.kind.lower(), self.kind.lower())
        if kind not in KINDS:
            raise UnsupportedCone(f"unknown cone kind {self.kind!r}")
        params = dict(self.params)
        names = KINDS[kind]
        if set(params) != set(names):
            raise BadRange(f"{kind} needs parameters {names}, got {sorted(params)}")
        params = {k: int(params[k]) for k in names}
        if any(v < 1 for v in params.values()):
            raise BadRange(f"parameters must be positive: {params}")
        if "p" in params and params["p"] < params["q"]:
            raise BadRange(f"need p >= q, got p={params['p']}, q={params['q']}")
        variant = self.variant or KIND_VARIANTS[kind][0]
        if variant == "full":
            variant = "nonzero"
        if variant not in KIND_VARIANTS[kind]:
            raise BadRange(f"variant {variant!r} not available for {kind}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", tuple((k, params[k]) for k in names))
        object.__setattr__(self, "variant", variant)

    @classmethod
    def make(cls, kind: str, variant: str = "", **params) -> "ConeId":
        return cls(kind, tuple(params.items()), variant)

    def __getitem__(self, name: str) -> int:
        return dict(self.params)[name]

    def param_dict(self) -> dict:
        return dict(self.params)

    def __str__(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.kind}({args})[{self.variant}]"
