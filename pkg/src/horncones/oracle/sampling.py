"""Realizable points of each cone, drawn from random matrices.

Every trial gets its own generator spawned from the seed, so a batch of
``k`` trials equals ``k`` single draws with the same seed and trial index.
The spectra themselves are computed for the whole batch at once.
"""

from __future__ import annotations

import numpy as np

from ..coneid import ConeId
from ..errors import UnsupportedCone
from .linalg import (
    eigenvalues_hermitian,
    random_hermitian,
    random_matrix,
    random_real_symmetric,
    singular_values,
)

__all__ = ["sample_cone_point", "sample_cone_points", "trial_generators", "e2_projection"]


def trial_generators(seed, trials: int) -> list[np.random.Generator]:
    """One independent generator per trial, split from ``seed``."""
    ss = np.random.SeedSequence(seed)
    return [np.random.default_rng(s) for s in ss.spawn(trials)]


def e2_projection(A: np.ndarray) -> np.ndarray:
    """``(X + Y)/2 + i (Z - Z^t)/2`` for a real symmetric ``A = [[X, Z^t], [Z, Y]]``."""
    n = A.shape[-1] // 2
    X = A[..., :n, :n]
    Y = A[..., n:, n:]
    Z = A[..., n:, :n]
    return (X + Y) / 2 + 1j * (Z - Z.swapaxes(-1, -2)) / 2


# Each drawer returns {block: (op, matrix)} with op "e" (eigenvalues of a
# Hermitian matrix) or "s" (singular values).

def _horn(c, rng):
    n = c["n"]
    X, Y = random_hermitian(n, rng), random_hermitian(n, rng)
    return {"x": ("e", X), "y": ("e", Y), "z": ("e", X + Y)}


def _lr(c, rng):
    m = c["m"]
    X = random_hermitian(m + c["n"], rng)
    return {"z": ("e", X), "x": ("e", X[:m, :m]), "y": ("e", X[m:, m:])}


def _e1(c, rng):
    n = c["n"]
    X = random_hermitian(n, rng) if rng.random() < 0.8 else random_real_symmetric(n, rng).astype(complex)
    return {"x": ("e", X), "y": ("e", X.real)}


def _e2(c, rng):
    A = random_real_symmetric(2 * c["n"], rng)
    return {"x": ("e", A), "y": ("e", e2_projection(A))}


def _sing(c, rng, p=None, q=None):
    p = c["p"] if p is None else p
    q = c["q"] if q is None else q
    A, B = random_matrix(p, q, rng), random_matrix(p, q, rng)
    if rng.random() < 0.1:
        B = -A + 0.1 * B
    return {"x": ("s", A), "y": ("s", B), "z": ("s", A + B)}


def _so_odd(c, rng):
    return _sing(c, rng, c["q"] + 1, c["q"])


def _a(c, rng):
    p = c["p"]
    X = random_hermitian(p + c["q"], rng)
    return {"x": ("e", X), "y": ("s", X[:p, p:])}


def _b(c, rng):
    n = c["n"]
    X = random_matrix(n, n, rng)
    return {"x": ("s", X), "y": ("e", (X + X.conj().T) / 2)}


def _s(c, rng):
    p = c["p"]
    X = random_matrix(p + c["q"], p + c["q"], rng)
    return {"z": ("s", X), "x": ("s", X[:p, p:]), "y": ("s", X[p:, :p])}


def _t(c, rng):
    p = c["p"]
    X = random_matrix(p + c["q"], p + c["q"], rng)
    return {"z": ("s", X), "x": ("s", X[:p, :p]), "y": ("s", X[p:, p:])}


_DRAWERS = {
    "horn": _horn,
    "lr": _lr,
    "e1": _e1,
    "e2": _e2,
    "sing": _sing,
    "so_odd": _so_odd,
    "a": _a,
    "b": _b,
    "s": _s,
    "t": _t,
}


def _cone(cone) -> ConeId:
    if isinstance(cone, ConeId):
        return cone
    if isinstance(cone, tuple):
        kind, params = cone
        return ConeId.make(kind, **params)
    raise UnsupportedCone(f"not a cone identifier: {cone!r}")


def sample_cone_points(cone: ConeId, trials: int, seed=0) -> dict[str, np.ndarray]:
    """``trials`` realizable points of ``cone`` as ``{block: (trials, dim) array}``."""
    cone = _cone(cone)
    if cone.kind not in _DRAWERS:
        raise UnsupportedCone(f"no sampler for {cone.kind}")
    draws = [_DRAWERS[cone.kind](cone, rng) for rng in trial_generators(seed, trials)]
    out = {}
    for name, (op, _) in draws[0].items():
        stack = np.stack([np.asarray(d[name][1], dtype=complex) for d in draws])
        out[name] = eigenvalues_hermitian(stack) if op == "e" else singular_values(stack)
    return out


def sample_cone_point(cone: ConeId, seed=0, trial: int = 0) -> dict[str, np.ndarray]:
    """One realizable point of ``cone`` (the ``trial``-th of the stream for ``seed``)."""
    pts = sample_cone_points(cone, trial + 1, seed)
    return {k: v[trial] for k, v in pts.items()}
