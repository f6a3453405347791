"""Seeded construction of structured matrices.

All generators are pure functions of their arguments and a 64-bit seed.
Randomness comes from the counter-based Philox engine; independent
substreams are derived from the seed plus small integer lane tags, so
identical inputs give bit-identical matrices on every platform and parallel
streams never share state.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import InvalidIndex, InvalidSpec

__all__ = [
    "GenSpec",
    "make_rng",
    "random_unitary",
    "random_normal",
    "random_ginibre",
    "jordan_nilpotent",
    "normaloid_counterexample",
    "root_of_scalar_instance",
    "k_quasi_member",
    "rr_instance",
    "build",
    "GENERATOR_KINDS",
]

_MASK64 = 0xFFFFFFFFFFFFFFFF


def make_rng(seed: int, *lane: int) -> np.random.Generator:
    """Philox stream for ``seed``; ``lane`` selects an independent substream."""
    ss = np.random.SeedSequence(
        entropy=int(seed) & _MASK64, spawn_key=tuple(int(x) for x in lane)
    )
    return np.random.Generator(np.random.Philox(ss))


def _haar(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar unitary via QR of a complex Gaussian with phase-corrected R."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    ph = d / np.abs(d)
    return q * ph


def _unit_disk(rng: np.random.Generator, size: int) -> np.ndarray:
    radius = np.sqrt(rng.uniform(0.0, 1.0, size))
    angle = rng.uniform(0.0, 2.0 * np.pi, size)
    return radius * np.exp(1j * angle)


def _annulus(rng: np.random.Generator, size: int, r_lo: float, r_hi: float) -> np.ndarray:
    radius = np.sqrt(rng.uniform(r_lo**2, r_hi**2, size))
    angle = rng.uniform(0.0, 2.0 * np.pi, size)
    return radius * np.exp(1j * angle)


def random_unitary(dim: int, seed: int) -> np.ndarray:
    if dim < 1:
        raise InvalidSpec("dim must be at least 1")
    return _haar(dim, make_rng(seed, 0))


def random_normal(dim: int, seed: int, eigenvalues=None) -> np.ndarray:
    """U diag(eigenvalues) U* for a Haar unitary U; the default spectrum is
    uniform on the unit disk."""
    if dim < 1:
        raise InvalidSpec("dim must be at least 1")
    if eigenvalues is None:
        eig = _unit_disk(make_rng(seed, 1, 1), dim)
    else:
        eig = np.asarray(eigenvalues, dtype=np.complex128)
        if eig.shape != (dim,):
            raise InvalidSpec(f"need exactly {dim} eigenvalues, got {eig.shape}")
    u = _haar(dim, make_rng(seed, 1, 0))
    return (u * eig) @ u.conj().T


def random_ginibre(dim: int, seed: int) -> np.ndarray:
    """Complex Ginibre matrix scaled by 1/sqrt(dim)."""
    if dim < 1:
        raise InvalidSpec("dim must be at least 1")
    rng = make_rng(seed, 2)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return z / np.sqrt(dim)


def jordan_nilpotent(dim: int, index: int, seed: int) -> np.ndarray:
    """Direct sum of nilpotent Jordan blocks (largest of size ``index``)
    conjugated by a Haar unitary; the nil-index is exactly ``index``."""
    if not 2 <= index <= dim:
        raise InvalidIndex(f"need 2 <= index <= dim, got index={index}, dim={dim}")
    rng = make_rng(seed, 3)
    sizes = [index]
    rest = dim - index
    while rest > 0:
        s = int(rng.integers(1, min(index, rest) + 1))
        sizes.append(s)
        rest -= s
    blocks = [np.eye(s, k=1, dtype=np.complex128) for s in sizes]
    n0 = scipy.linalg.block_diag(*blocks).astype(np.complex128)
    u = _haar(dim, make_rng(seed, 3, 1))
    return u @ n0 @ u.conj().T


def normaloid_counterexample(dim_m: int, dim_n: int, seed: int) -> np.ndarray:
    """Normal block M plus an index-2 nilpotent block N with ||N|| = ||M||/2.

    The direct sum is normaloid and has normal even powers without being
    normal. M draws its eigenvalues from the annulus [1/2, 1].
    """
    if dim_m < 1 or dim_n < 2:
        raise InvalidSpec("need dim_m >= 1 and dim_n >= 2")
    eig = _annulus(make_rng(seed, 4, 0), dim_m, 0.5, 1.0)
    u = _haar(dim_m, make_rng(seed, 4, 1))
    m = (u * eig) @ u.conj().T
    nil = jordan_nilpotent(dim_n, 2, (seed * 0x9E3779B97F4A7C15 + 1) & _MASK64)
    norm_m = float(np.linalg.norm(m, 2))
    norm_n = float(np.linalg.norm(nil, 2))
    nil = nil * (norm_m / 2.0 / norm_n)
    return scipy.linalg.block_diag(m, nil).astype(np.complex128)


def root_of_scalar_instance(dim: int, n: int, lam: complex, seed: int) -> np.ndarray:
    """A normal matrix T with T^n = lam I: the principal n-th root of lam
    times a unitary of order n (conjugated diagonal of n-th roots of unity)."""
    if dim < 1 or n < 1:
        raise InvalidSpec("dim and n must be at least 1")
    rng = make_rng(seed, 5, 0)
    picks = rng.integers(0, n, dim)
    roots = np.exp(2j * np.pi * picks / n)
    v = _haar(dim, make_rng(seed, 5, 1))
    u = (v * roots) @ v.conj().T
    root = complex(lam) ** (1.0 / n) if lam != 0 else 0.0
    return root * u


def k_quasi_member(dim_normal: int, dim_nil: int, k: int, seed: int) -> np.ndarray:
    """Normal block plus nilpotent block of index at most k+1.

    Direct sums of k-quasi-paranormal operators are k-quasi-paranormal and
    nilpotents of index up to k+1 belong to the class, so the output is a
    certified member. The normal block draws eigenvalues from the annulus
    [1/2, 1] to keep powers well separated from zero.
    """
    if k < 0:
        raise InvalidSpec("k must be nonnegative")
    if dim_normal < 0 or dim_nil < 0 or dim_normal + dim_nil < 1:
        raise InvalidSpec("block dimensions must be nonnegative and not both zero")
    blocks = []
    if dim_normal > 0:
        eig = _annulus(make_rng(seed, 6, 0), dim_normal, 0.5, 1.0)
        u = _haar(dim_normal, make_rng(seed, 6, 1))
        blocks.append((u * eig) @ u.conj().T)
    if dim_nil > 0:
        max_index = min(k + 1, dim_nil)
        if max_index < 2:
            blocks.append(np.zeros((dim_nil, dim_nil), dtype=np.complex128))
        else:
            rng = make_rng(seed, 6, 2)
            index = int(rng.integers(2, max_index + 1))
            blocks.append(
                jordan_nilpotent(dim_nil, index, (seed * 0x9E3779B97F4A7C15 + 2) & _MASK64)
            )
    return scipy.linalg.block_diag(*blocks).astype(np.complex128)


def rr_instance(
    dim_a: int, dim_bc: int, seed: int, *, b_zero: bool = False
) -> np.ndarray:
    """Assembled square root of a normal operator with randomized blocks.

    B and C are drawn simultaneously diagonal in a shared Haar basis, C with
    spectrum in [1/2, 1] (strictly positive, hence injective); A, when
    present, is a random normal block with annulus spectrum.
    """
    from .decomposition import rr_assemble

    if dim_a < 0 or dim_bc < 1:
        raise InvalidSpec("need dim_a >= 0 and dim_bc >= 1")
    w = _haar(dim_bc, make_rng(seed, 7, 0))
    c_eig = make_rng(seed, 7, 1).uniform(0.5, 1.0, dim_bc)
    c = (w * c_eig) @ w.conj().T
    c = (c + c.conj().T) / 2.0
    if b_zero:
        b = np.zeros((dim_bc, dim_bc), dtype=np.complex128)
    else:
        b_eig = _annulus(make_rng(seed, 7, 2), dim_bc, 0.5, 1.0)
        b = (w * b_eig) @ w.conj().T
    a = None
    if dim_a > 0:
        eig = _annulus(make_rng(seed, 7, 3), dim_a, 0.5, 1.0)
        u = _haar(dim_a, make_rng(seed, 7, 4))
        a = (u * eig) @ u.conj().T
    return rr_assemble(a, b, c)


GENERATOR_KINDS = (
    "unitary",
    "normal",
    "ginibre",
    "jordan",
    "counterexample",
    "scalar-root",
    "k-quasi",
    "rr",
)


@dataclass(frozen=True)
class GenSpec:
    """Serializable recipe: generator kind, seed, and kind-specific params."""

    kind: str
    seed: int
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in GENERATOR_KINDS:
            raise InvalidSpec(f"unknown generator kind {self.kind!r}")
        if not 0 <= int(self.seed) <= _MASK64:
            raise InvalidSpec("seed must fit in 64 bits")

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "seed": int(self.seed), "params": dict(self.params)}

    @staticmethod
    def from_json_dict(doc: dict) -> "GenSpec":
        try:
            kind = doc["kind"]
            seed = int(doc["seed"])
            params = dict(doc.get("params", {}))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidSpec(f"malformed generator spec: {exc}") from exc
        return GenSpec(kind=kind, seed=seed, params=params)

    @staticmethod
    def from_json(text: str) -> "GenSpec":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidSpec(f"not valid JSON: {exc}") from exc
        return GenSpec.from_json_dict(doc)


def _int_param(params: dict, name: str) -> int:
    try:
        return int(params[name])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidSpec(f"generator needs integer parameter {name!r}") from exc


def build(spec: GenSpec) -> np.ndarray:
    """Materialize the matrix described by a GenSpec."""
    p = spec.params
    if spec.kind == "unitary":
        return random_unitary(_int_param(p, "dim"), spec.seed)
    if spec.kind == "normal":
        eig = p.get("eigenvalues")
        if eig is not None:
            eig = [complex(re, im) for re, im in eig]
        return random_normal(_int_param(p, "dim"), spec.seed, eig)
    if spec.kind == "ginibre":
        return random_ginibre(_int_param(p, "dim"), spec.seed)
    if spec.kind == "jordan":
        return jordan_nilpotent(_int_param(p, "dim"), _int_param(p, "index"), spec.seed)
    if spec.kind == "counterexample":
        return normaloid_counterexample(
            _int_param(p, "dim_m"), _int_param(p, "dim_n"), spec.seed
        )
    if spec.kind == "scalar-root":
        lam = p.get("lambda", [1.0, 0.0])
        try:
            lam_c = complex(float(lam[0]), float(lam[1]))
        except (TypeError, ValueError, IndexError) as exc:
            raise InvalidSpec("scalar-root lambda must be a [re, im] pair") from exc
        return root_of_scalar_instance(
            _int_param(p, "dim"), _int_param(p, "n"), lam_c, spec.seed
        )
    if spec.kind == "k-quasi":
        return k_quasi_member(
            _int_param(p, "dim_normal"), _int_param(p, "dim_nil"),
            _int_param(p, "k"), spec.seed,
        )
    if spec.kind == "rr":
        return rr_instance(
            _int_param(p, "dim_a"), _int_param(p, "dim_bc"), spec.seed,
            b_zero=bool(p.get("b_zero", False)),
        )
    raise InvalidSpec(f"unknown generator kind {spec.kind!r}")
