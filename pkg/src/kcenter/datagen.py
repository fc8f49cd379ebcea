"""Seeded synthetic point sets: uniform square, balanced and unbalanced blobs."""
from __future__ import annotations

from dataclasses import asdict, dataclass, replace

import numpy as np

from .metric import PointSet

UNIF = "unif"
GAU = "gau"
UNB = "unb"
KINDS = (UNIF, GAU, UNB)
DEFAULT_DIM = {UNIF: 2, GAU: 3, UNB: 3}


@dataclass(frozen=True)
class GenSpec:
    """Generator parameters.

    ``side`` is the edge of the cube holding the uniform points or the blob
    centers; ``sigma`` is the per-coordinate standard deviation of blob
    offsets. ``dim`` of None picks 2 for unif and 3 for the blob kinds.
    """

    kind: str
    n: int
    kprime: int = 1
    dim: int | None = None
    side: float = 100.0
    sigma: float = 0.1
    seed: int = 0

    def __post_init__(self):
        kind = self.kind.lower()
        if kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}; expected one of {KINDS}")
        object.__setattr__(self, "kind", kind)
        if self.dim is None:
            object.__setattr__(self, "dim", DEFAULT_DIM[kind])
        if int(self.n) < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if int(self.dim) < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if not self.side > 0:
            raise ValueError(f"side must be positive, got {self.side}")
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if kind != UNIF and int(self.kprime) < 1:
            raise ValueError(f"kprime must be >= 1, got {self.kprime}")

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> "GenSpec":
        """``kind:n[:kprime[:dim[:side[:sigma]]]]``, empty fields keep defaults."""
        fields = text.split(":")
        if len(fields) < 2 or len(fields) > 6:
            raise ValueError(f"bad generator spec {text!r}; expected kind:n:kprime:dim:side:sigma")
        kw = {"kind": fields[0], "n": int(fields[1]), "seed": seed}
        casts = (("kprime", int), ("dim", int), ("side", float), ("sigma", float))
        for (name, cast), value in zip(casts, fields[2:]):
            if value != "":
                kw[name] = cast(value)
        return cls(**kw)

    def describe(self) -> str:
        return " ".join(f"{k}={v}" for k, v in asdict(self).items())

    def with_seed(self, seed: int) -> "GenSpec":
        return replace(self, seed=seed)


def gen_unif(spec: GenSpec) -> PointSet:
    """n points i.i.d. uniform in [0, side]^dim."""
    if spec.kind != UNIF:
        raise ValueError(f"gen_unif needs kind={UNIF!r}, got {spec.kind!r}")
    rng = np.random.default_rng(spec.seed)
    return PointSet(rng.uniform(0.0, spec.side, size=(spec.n, spec.dim)))


def _mixture(spec: GenSpec, weights: np.ndarray | None):
    rng = np.random.default_rng(spec.seed)
    centers = rng.uniform(0.0, spec.side, size=(spec.kprime, spec.dim))
    if weights is None:
        labels = rng.integers(spec.kprime, size=spec.n)
    else:
        labels = rng.choice(spec.kprime, size=spec.n, p=weights)
    pts = centers[labels] + rng.normal(0.0, spec.sigma, size=(spec.n, spec.dim))
    return PointSet(pts), labels, centers


def gen_gau(spec: GenSpec, return_labels: bool = False):
    """Balanced Gaussian blobs: each point picks one of kprime centers uniformly."""
    if spec.kind != GAU:
        raise ValueError(f"gen_gau needs kind={GAU!r}, got {spec.kind!r}")
    if spec.kprime > spec.n:
        raise ValueError(f"kprime={spec.kprime} exceeds n={spec.n}")
    ps, labels, centers = _mixture(spec, None)
    return (ps, labels, centers) if return_labels else ps


def unb_weights(kprime: int) -> np.ndarray:
    w = np.full(kprime, 0.5 / (kprime - 1))
    w[0] = 0.5
    return w


def gen_unb(spec: GenSpec, return_labels: bool = False):
    """Like :func:`gen_gau` but cluster 0 draws half the points."""
    if spec.kind != UNB:
        raise ValueError(f"gen_unb needs kind={UNB!r}, got {spec.kind!r}")
    if spec.kprime < 2:
        raise ValueError(f"unbalanced blobs need kprime >= 2, got {spec.kprime}")
    if spec.kprime > spec.n:
        raise ValueError(f"kprime={spec.kprime} exceeds n={spec.n}")
    ps, labels, centers = _mixture(spec, unb_weights(spec.kprime))
    return (ps, labels, centers) if return_labels else ps


def generate(spec: GenSpec) -> PointSet:
    return {UNIF: gen_unif, GAU: gen_gau, UNB: gen_unb}[spec.kind](spec)
