"""Operator-class membership oracles.

Each class predicate reports a MembershipVerdict with a signed defect
(negative means the defining inequality is violated), an independently
checkable witness for non-membership, and the oracle that produced the
number. The inequality-defined classes (paranormal and its k-indexed
relatives) are decided by two independent routes:

* a pencil oracle that sweeps the least eigenvalue of a parameterized
  Hermitian pencil over a logarithmic grid with golden-section refinement,
* a sphere oracle that minimizes the exact defining defect over the unit
  sphere by projected gradient descent with numerically estimated gradients.

For the quadratic pencil A - 2*z*B + z^2*C with A, B, C PSD, positivity for
every z > 0 is equivalent to the per-vector inequality
<Bx,x>^2 <= <Ax,x><Cx,x>, which is exactly the defining norm inequality, so
the two oracles decide the same set and any decisive disagreement is
surfaced as OracleDisagreement rather than resolved silently.

Decision semantics: with d the defect normalized by the class scale and
t = tol_decision, a verdict is Member when d >= -t/10, NonMember when
d <= -t (witness re-validated through the defining inequality), and
Inconclusive inside the band in between, which is the optimizer and
eigensolver noise floor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import InvalidPencil, OracleDisagreement
from .linalg import (
    DEFAULT_TOLERANCES,
    TolerancePolicy,
    as_operator,
    frobenius_norm,
    matrix_power,
    operator_norm,
    psd_power,
    spectral_radius,
)

__all__ = [
    "Status",
    "Witness",
    "MembershipVerdict",
    "OperatorClass",
    "PencilSpec",
    "quasi_paranormal_pencil",
    "k_paranormal_pencil",
    "absolute_k_paranormal_pencil",
    "pencil_check",
    "sphere_check",
    "is_normal",
    "is_quasinormal",
    "quasinormal_embry",
    "is_hyponormal",
    "is_p_hyponormal",
    "is_class_a",
    "is_k_quasi_paranormal",
    "is_k_paranormal",
    "is_absolute_k_paranormal",
    "is_normaloid",
    "classify_all",
    "chain_violations",
]


class Status(str, Enum):
    MEMBER = "Member"
    NON_MEMBER = "NonMember"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Witness:
    """Location of the worst defect: a unit vector, a pencil parameter,
    or both."""

    vector: np.ndarray | None = None
    pencil_lambda: float | None = None

    def to_json_dict(self) -> dict:
        doc: dict = {}
        if self.vector is not None:
            doc["vector"] = [[float(z.real), float(z.imag)] for z in self.vector]
        if self.pencil_lambda is not None:
            doc["lambda"] = float(self.pencil_lambda)
        return doc


@dataclass(frozen=True)
class MembershipVerdict:
    """Outcome of one class predicate.

    ``defect`` is signed and raw (not normalized); ``threshold`` is the
    absolute decision cut that was applied to it, i.e. tol_decision (or the
    predicate's equality/PSD tolerance) times the class scale.
    """

    status: Status
    defect: float
    oracle: str
    witness: Witness | None = None
    threshold: float = 0.0
    seed: int | None = None

    @property
    def is_member(self) -> bool:
        return self.status is Status.MEMBER

    @property
    def is_definite(self) -> bool:
        return self.status is not Status.INCONCLUSIVE

    def to_json_dict(self) -> dict:
        return {
            "status": self.status.value,
            "defect": float(self.defect),
            "oracle": self.oracle,
            "witness": self.witness.to_json_dict() if self.witness else None,
            "threshold": float(self.threshold),
            "seed": self.seed,
        }


_PARAM_FREE = ("Normal", "Quasinormal", "Hyponormal", "ClassA", "Paranormal", "Normaloid")


@dataclass(frozen=True, order=True)
class OperatorClass:
    """Label of an operator class, with its k or p parameter when indexed.

    KQuasiParanormal(0) is identified with Paranormal, so the factory
    normalizes it away.
    """

    name: str
    k: int | None = None
    p: float | None = None

    def __post_init__(self) -> None:
        if self.name in _PARAM_FREE:
            if self.k is not None or self.p is not None:
                raise ValueError(f"{self.name} takes no parameter")
        elif self.name == "PHyponormal":
            if self.p is None or not 0 < self.p <= 1:
                raise ValueError("PHyponormal requires p in (0, 1]")
        elif self.name in ("KParanormal", "AbsoluteKParanormal"):
            if self.k is None or self.k < 1:
                raise ValueError(f"{self.name} requires a positive integer k")
        elif self.name == "KQuasiParanormal":
            if self.k is None or self.k < 1:
                raise ValueError(
                    "KQuasiParanormal requires k >= 1 (k = 0 is Paranormal)"
                )
        else:
            raise ValueError(f"unknown operator class {self.name!r}")

    @staticmethod
    def normal() -> "OperatorClass":
        return OperatorClass("Normal")

    @staticmethod
    def quasinormal() -> "OperatorClass":
        return OperatorClass("Quasinormal")

    @staticmethod
    def hyponormal() -> "OperatorClass":
        return OperatorClass("Hyponormal")

    @staticmethod
    def p_hyponormal(p: float) -> "OperatorClass":
        return OperatorClass("PHyponormal", p=float(p))

    @staticmethod
    def class_a() -> "OperatorClass":
        return OperatorClass("ClassA")

    @staticmethod
    def paranormal() -> "OperatorClass":
        return OperatorClass("Paranormal")

    @staticmethod
    def k_paranormal(k: int) -> "OperatorClass":
        return OperatorClass("KParanormal", k=int(k))

    @staticmethod
    def absolute_k_paranormal(k: int) -> "OperatorClass":
        return OperatorClass("AbsoluteKParanormal", k=int(k))

    @staticmethod
    def k_quasi_paranormal(k: int) -> "OperatorClass":
        if int(k) == 0:
            return OperatorClass.paranormal()
        return OperatorClass("KQuasiParanormal", k=int(k))

    @staticmethod
    def normaloid() -> "OperatorClass":
        return OperatorClass("Normaloid")

    @property
    def params(self) -> dict:
        doc: dict = {}
        if self.k is not None:
            doc["k"] = self.k
        if self.p is not None:
            doc["p"] = self.p
        return doc

    def __str__(self) -> str:
        if self.k is not None:
            return f"{self.name}(k={self.k})"
        if self.p is not None:
            return f"{self.name}(p={self.p:g})"
        return self.name


# ---------------------------------------------------------------------------
# Defect scales
# ---------------------------------------------------------------------------
#
# Every defining inequality is homogeneous in T; normalizing defects by
# max(1, ||T||)^degree makes the decision bands scale invariant.


def _scale(norm_t: float, degree: float) -> float:
    return max(1.0, norm_t) ** degree


def _decide(defect: float, scale: float, tol: TolerancePolicy) -> tuple[Status, float]:
    """Three-way decision with the Inconclusive noise band; returns the
    status and the absolute threshold that was applied."""
    threshold = tol.tol_decision * scale
    if defect >= -threshold / 10.0:
        return Status.MEMBER, threshold
    if defect <= -threshold:
        return Status.NON_MEMBER, threshold
    return Status.INCONCLUSIVE, threshold


def _equality_verdict(residual: float, scale: float, tol: TolerancePolicy) -> MembershipVerdict:
    threshold = tol.tol_eq * scale
    status = Status.MEMBER if residual <= threshold else Status.NON_MEMBER
    return MembershipVerdict(
        status=status, defect=-residual, oracle="algebraic", threshold=threshold
    )


def _psd_verdict(
    diff: np.ndarray, scale: float, tol: TolerancePolicy
) -> MembershipVerdict:
    from .linalg import hermitian_eigen

    eig = hermitian_eigen(diff, tol)
    lam_min = float(eig.eigenvalues[0])
    threshold = tol.tol_psd * scale
    status = Status.MEMBER if lam_min >= -threshold else Status.NON_MEMBER
    witness = None
    if status is Status.NON_MEMBER:
        witness = Witness(vector=eig.eigenvectors[:, 0])
    return MembershipVerdict(
        status=status, defect=lam_min, oracle="algebraic", witness=witness,
        threshold=threshold,
    )


def _zero_operator(t: np.ndarray) -> bool:
    return not t.any()


def _member_zero() -> MembershipVerdict:
    # The zero operator satisfies every defining inequality with equality.
    return MembershipVerdict(
        status=Status.MEMBER, defect=0.0, oracle="algebraic", threshold=0.0
    )


# ---------------------------------------------------------------------------
# Pencil oracle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PencilSpec:
    """Hermitian pencil P(lam) = sum_j lam^(e_j) M_j on (lambda_lo, lambda_max].

    ``scale`` is the natural magnitude of P over the domain and normalizes
    least-eigenvalue defects for the decision band.
    """

    terms: tuple[tuple[float, np.ndarray], ...]
    lambda_lo: float
    lambda_max: float
    scale: float
    label: str = ""

    def __post_init__(self) -> None:
        if not self.terms:
            raise InvalidPencil("pencil needs at least one term")
        if not (0 < self.lambda_lo < self.lambda_max) or not np.isfinite(self.lambda_max):
            raise InvalidPencil("pencil domain must satisfy 0 < lambda_lo < lambda_max")
        dims = {m.shape for _, m in self.terms}
        if len(dims) != 1:
            raise InvalidPencil(f"pencil terms have mixed shapes {dims}")
        for expo, m in self.terms:
            if expo < 0 or not np.isfinite(expo):
                raise InvalidPencil("pencil exponents must be finite and nonnegative")
            mm = np.asarray(m)
            if mm.ndim != 2 or mm.shape[0] != mm.shape[1]:
                raise InvalidPencil("pencil coefficients must be square")
            resid = frobenius_norm(mm - mm.conj().T)
            if resid > DEFAULT_TOLERANCES.tol_eq * max(1.0, frobenius_norm(mm)):
                raise InvalidPencil(
                    f"pencil coefficient with exponent {expo} is not Hermitian"
                )

    @property
    def dim(self) -> int:
        return self.terms[0][1].shape[0]

    def evaluate(self, lams: np.ndarray) -> np.ndarray:
        """Stack of Hermitian P(lam) for each lam, shape (len(lams), n, n)."""
        lams = np.atleast_1d(np.asarray(lams, dtype=float))
        n = self.dim
        out = np.zeros((lams.size, n, n), dtype=np.complex128)
        for expo, m in self.terms:
            out += (lams**expo)[:, None, None] * m[None, :, :]
        return (out + out.conj().transpose(0, 2, 1)) / 2.0


def _pencil_domain(norm_t: float) -> tuple[float, float]:
    s = max(1.0, norm_t**2)
    return 1e-6 * s, 4.0 * s


def quasi_paranormal_pencil(t, k: int, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> PencilSpec:
    """Quadratic pencil A - 2z B + z^2 C whose global positivity on z > 0 is
    k-quasi-paranormality (k = 0 gives paranormality)."""
    m = as_operator(t)
    if k < 0:
        raise ValueError("k must be nonnegative")
    pk = matrix_power(m, k)
    pk1 = m @ pk
    pk2 = m @ pk1
    a = pk2.conj().T @ pk2
    b = pk1.conj().T @ pk1
    c = pk.conj().T @ pk
    norm_t = operator_norm(m)
    lo, hi = _pencil_domain(norm_t)
    return PencilSpec(
        terms=((0.0, a), (1.0, -2.0 * b), (2.0, c)),
        lambda_lo=lo,
        lambda_max=hi,
        scale=_scale(norm_t, 2 * k + 4),
        label=f"quasi-paranormal[k={k}]",
    )


def k_paranormal_pencil(t, k: int, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> PencilSpec:
    """Pencil T*^(k+1) T^(k+1) - (k+1) lam^k T*T + k lam^(k+1) I."""
    m = as_operator(t)
    if k < 1:
        raise ValueError("k must be a positive integer")
    pk1 = matrix_power(m, k + 1)
    d = pk1.conj().T @ pk1
    e = m.conj().T @ m
    eye = np.eye(m.shape[0], dtype=np.complex128)
    norm_t = operator_norm(m)
    lo, hi = _pencil_domain(norm_t)
    return PencilSpec(
        terms=((0.0, d), (float(k), -(k + 1.0) * e), (float(k + 1), float(k) * eye)),
        lambda_lo=lo,
        lambda_max=hi,
        scale=_scale(norm_t, 2 * k + 2),
        label=f"k-paranormal[k={k}]",
    )


def absolute_k_paranormal_pencil(
    t, k: int, tol: TolerancePolicy = DEFAULT_TOLERANCES
) -> PencilSpec:
    """Pencil T*(T*T)^k T - (k+1) lam^k T*T + k lam^(k+1) I."""
    m = as_operator(t)
    if k < 1:
        raise ValueError("k must be a positive integer")
    gram = m.conj().T @ m
    d = m.conj().T @ matrix_power(gram, k) @ m
    eye = np.eye(m.shape[0], dtype=np.complex128)
    norm_t = operator_norm(m)
    lo, hi = _pencil_domain(norm_t)
    return PencilSpec(
        terms=((0.0, d), (float(k), -(k + 1.0) * gram), (float(k + 1), float(k) * eye)),
        lambda_lo=lo,
        lambda_max=hi,
        scale=_scale(norm_t, 2 * k + 2),
        label=f"absolute-k-paranormal[k={k}]",
    )


_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def _golden_refine(pencil: PencilSpec, lo: float, hi: float, width: float):
    """Golden-section search of lam -> lam_min(P(lam)) on [lo, hi]; returns
    the best (lam, value) among all evaluations."""

    def f(lam: float) -> float:
        return float(np.linalg.eigvalsh(pencil.evaluate(np.array([lam])))[0, 0])

    best_lam, best_val = lo, f(lo)
    for lam in (hi,):
        val = f(lam)
        if val < best_val:
            best_lam, best_val = lam, val
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > width:
        if fc < best_val:
            best_lam, best_val = c, fc
        if fd < best_val:
            best_lam, best_val = d, fd
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return best_lam, best_val


def pencil_check(
    pencil: PencilSpec,
    tol: TolerancePolicy = DEFAULT_TOLERANCES,
    *,
    n_grid: int = 257,
    max_refine: int = 8,
) -> MembershipVerdict:
    """Global least-eigenvalue certificate for P(lam) >= 0 on the pencil
    domain.

    Sweeps a logarithmic grid, then refines around every local grid minimum
    (up to ``max_refine``, deepest first) by golden-section search to width
    1e-6 * lambda_max. The witness is the minimizing lambda and eigenvector.
    """
    if not isinstance(pencil, PencilSpec):
        raise InvalidPencil(f"expected PencilSpec, got {type(pencil).__name__}")
    lams = np.geomspace(pencil.lambda_lo, pencil.lambda_max, n_grid)
    mins = np.linalg.eigvalsh(pencil.evaluate(lams))[:, 0]

    padded = np.concatenate([[np.inf], mins, [np.inf]])
    local = np.nonzero((mins <= padded[:-2]) & (mins <= padded[2:]))[0]
    order = local[np.argsort(mins[local])][:max_refine]

    best_lam = float(lams[int(np.argmin(mins))])
    best_val = float(np.min(mins))
    width = 1e-6 * pencil.lambda_max
    for idx in order:
        lo = lams[max(int(idx) - 1, 0)]
        hi = lams[min(int(idx) + 1, n_grid - 1)]
        if hi - lo <= width:
            continue
        lam, val = _golden_refine(pencil, float(lo), float(hi), width)
        if val < best_val:
            best_lam, best_val = lam, val

    status, threshold = _decide(best_val, pencil.scale, tol)
    w, v = np.linalg.eigh(pencil.evaluate(np.array([best_lam]))[0])
    witness = Witness(vector=v[:, 0], pencil_lambda=best_lam)
    return MembershipVerdict(
        status=status,
        defect=best_val,
        oracle="pencil",
        witness=witness,
        threshold=threshold,
    )


# ---------------------------------------------------------------------------
# Sphere oracle
# ---------------------------------------------------------------------------


def _rng_stream(seed: int, *lane: int) -> np.random.Generator:
    """Counter-based Philox stream; lanes derive independent substreams."""
    ss = np.random.SeedSequence(
        entropy=int(seed) & 0xFFFFFFFFFFFFFFFF, spawn_key=tuple(int(x) for x in lane)
    )
    return np.random.Generator(np.random.Philox(ss))


def _batched(defect, dim: int):
    """Adapt a unit-vector defect map to column-batched evaluation."""
    probe = np.zeros((dim, 2), dtype=np.complex128)
    probe[0, 0] = 1.0
    probe[min(1, dim - 1), 1] = 1.0
    try:
        out = np.asarray(defect(probe), dtype=float)
        if out.shape == (2,):
            return lambda x: np.asarray(defect(x), dtype=float)
    except Exception:
        pass

    def loop(x: np.ndarray) -> np.ndarray:
        return np.array([float(defect(x[:, j])) for j in range(x.shape[1])])

    return loop


def sphere_check(
    defect,
    dim: int,
    restarts: int = 8,
    *,
    seed: int = 0,
    warm_starts: np.ndarray | None = None,
    scale: float = 1.0,
    tol: TolerancePolicy = DEFAULT_TOLERANCES,
    max_iter: int = 300,
) -> MembershipVerdict:
    """Minimize a continuous defect over the unit sphere of C^dim.

    Projected gradient descent with central-difference gradients runs from
    ``restarts`` seeded random starts (stream ``seed + index``) plus every
    standard basis vector and any supplied warm starts (columns). Restarts
    are reduced by minimum, so the result does not depend on evaluation
    order.
    """
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    f = _batched(defect, dim)

    starts = [np.eye(dim, dtype=np.complex128)]
    if warm_starts is not None and warm_starts.size:
        ws = np.asarray(warm_starts, dtype=np.complex128)
        starts.append(ws / np.linalg.norm(ws, axis=0, keepdims=True))
    rand = np.empty((dim, restarts), dtype=np.complex128)
    for i in range(restarts):
        g = _rng_stream(seed, i)
        z = g.standard_normal(dim) + 1j * g.standard_normal(dim)
        rand[:, i] = z / np.linalg.norm(z)
    starts.append(rand)
    x = np.concatenate(starts, axis=1)
    n_pts = x.shape[1]

    fx = f(x)
    alpha = np.full(n_pts, 0.25)
    h = 5e-6
    eye = np.eye(dim)

    best_idx = int(np.argmin(fx))
    best_val = float(fx[best_idx])
    best_vec = x[:, best_idx].copy()

    for _ in range(max_iter):
        # Central differences along every real and imaginary coordinate of
        # every start, evaluated in one batch and renormalized to the sphere.
        pert = np.empty((dim, n_pts, 4, dim), dtype=np.complex128)
        base = x[:, :, None]
        pert[:, :, 0, :] = base + h * eye[:, None, :]
        pert[:, :, 1, :] = base - h * eye[:, None, :]
        pert[:, :, 2, :] = base + 1j * h * eye[:, None, :]
        pert[:, :, 3, :] = base - 1j * h * eye[:, None, :]
        flat = pert.reshape(dim, n_pts * 4 * dim)
        flat = flat / np.linalg.norm(flat, axis=0, keepdims=True)
        vals = f(flat).reshape(n_pts, 4, dim)
        grad = ((vals[:, 0, :] - vals[:, 1, :]) + 1j * (vals[:, 2, :] - vals[:, 3, :])).T
        grad /= 2.0 * h

        trial = x - alpha[None, :] * grad
        norms = np.linalg.norm(trial, axis=0)
        norms[norms == 0] = 1.0
        trial /= norms
        ft = f(trial)

        improved = ft < fx
        x = np.where(improved[None, :], trial, x)
        fx = np.where(improved, ft, fx)
        alpha = np.where(improved, np.minimum(alpha * 1.25, 1.0), alpha * 0.5)

        idx = int(np.argmin(fx))
        if fx[idx] < best_val:
            best_val = float(fx[idx])
            best_vec = x[:, idx].copy()
        if float(alpha.max()) < 1e-9:
            break

    status, threshold = _decide(best_val, scale, tol)
    return MembershipVerdict(
        status=status,
        defect=best_val,
        oracle="sphere",
        witness=Witness(vector=best_vec),
        threshold=threshold,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# Algebraic predicates
# ---------------------------------------------------------------------------


def is_normal(t, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> MembershipVerdict:
    """T*T = TT* within tol_eq relative to max(1, ||T||^2)."""
    m = as_operator(t)
    comm = m.conj().T @ m - m @ m.conj().T
    return _equality_verdict(
        frobenius_norm(comm), _scale(operator_norm(m), 2), tol
    )


def is_quasinormal(t, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> MembershipVerdict:
    """T commutes with T*T."""
    m = as_operator(t)
    resid = m @ m.conj().T @ m - m.conj().T @ m @ m
    return _equality_verdict(
        frobenius_norm(resid), _scale(operator_norm(m), 3), tol
    )


def quasinormal_embry(
    t, kmax: int, tol: TolerancePolicy = DEFAULT_TOLERANCES
) -> MembershipVerdict:
    """Power-moment characterization: (T*)^k T^k = (T*T)^k for k = 2..kmax."""
    if kmax < 2:
        raise ValueError("kmax must be at least 2")
    m = as_operator(t)
    norm_t = operator_norm(m)
    worst = -np.inf
    status = Status.MEMBER
    threshold = tol.tol_eq * _scale(norm_t, 4)
    gram = m.conj().T @ m
    for k in range(2, kmax + 1):
        pk = matrix_power(m, k)
        resid = frobenius_norm(pk.conj().T @ pk - matrix_power(gram, k))
        scale_k = _scale(norm_t, 2 * k)
        if resid > tol.tol_eq * scale_k:
            status = Status.NON_MEMBER
        if resid > worst:
            worst = resid
            threshold = tol.tol_eq * scale_k
    return MembershipVerdict(
        status=status, defect=-worst, oracle="algebraic", threshold=threshold
    )


def is_hyponormal(t, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> MembershipVerdict:
    """T*T - TT* positive semidefinite."""
    m = as_operator(t)
    diff = m.conj().T @ m - m @ m.conj().T
    return _psd_verdict(diff, _scale(operator_norm(m), 2), tol)


def is_p_hyponormal(
    t, p: float, tol: TolerancePolicy = DEFAULT_TOLERANCES
) -> MembershipVerdict:
    """(T*T)^p - (TT*)^p positive semidefinite, 0 < p <= 1."""
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    m = as_operator(t)
    if _zero_operator(m):
        return _member_zero()
    diff = psd_power(m.conj().T @ m, p, tol) - psd_power(m @ m.conj().T, p, tol)
    return _psd_verdict(diff, _scale(operator_norm(m), 2 * p), tol)


def is_class_a(t, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> MembershipVerdict:
    """((T*)^2 T^2)^(1/2) - T*T positive semidefinite."""
    m = as_operator(t)
    if _zero_operator(m):
        return _member_zero()
    m2 = m @ m
    diff = psd_power(m2.conj().T @ m2, 0.5, tol) - m.conj().T @ m
    return _psd_verdict(diff, _scale(operator_norm(m), 2), tol)


def is_normaloid(t, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> MembershipVerdict:
    """Spectral radius equals operator norm.

    Cross-checked against the power-norm identity ||T^n|| = ||T||^n for
    n = 2..6; a clash between the two demotes the verdict to Inconclusive.
    """
    m = as_operator(t)
    if _zero_operator(m):
        return _member_zero()
    norm_t = operator_norm(m)
    defect = spectral_radius(m) - norm_t
    scale = max(1.0, norm_t)
    threshold = tol.tol_decision * scale
    primary = Status.MEMBER if defect >= -threshold else Status.NON_MEMBER

    powers_ok = True
    for n in range(2, 7):
        lhs = operator_norm(matrix_power(m, n))
        rhs = norm_t**n
        if abs(lhs - rhs) > tol.tol_decision * max(1.0, rhs):
            powers_ok = False
            break
    cross = Status.MEMBER if powers_ok else Status.NON_MEMBER
    status = primary if primary is cross else Status.INCONCLUSIVE
    return MembershipVerdict(
        status=status, defect=defect, oracle="algebraic", threshold=threshold
    )


# ---------------------------------------------------------------------------
# Dual-oracle predicates
# ---------------------------------------------------------------------------


def _column_norms(m: np.ndarray, x: np.ndarray) -> np.ndarray:
    return np.linalg.norm(m @ x, axis=0)


def _as_columns(x: np.ndarray) -> tuple[np.ndarray, bool]:
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim == 1:
        return x[:, None], True
    return x, False


def _quasi_defect_fn(m: np.ndarray, k: int):
    pk = matrix_power(m, k)
    pk1 = m @ pk
    pk2 = m @ pk1

    def f(x):
        cols, single = _as_columns(x)
        vals = (
            _column_norms(pk2, cols) * _column_norms(pk, cols)
            - _column_norms(pk1, cols) ** 2
        )
        return float(vals[0]) if single else vals

    return f


def _k_paranormal_defect_fn(m: np.ndarray, k: int):
    pk1 = matrix_power(m, k + 1)

    def f(x):
        cols, single = _as_columns(x)
        vals = _column_norms(pk1, cols) - _column_norms(m, cols) ** (k + 1)
        return float(vals[0]) if single else vals

    return f


def _absolute_k_paranormal_defect_fn(m: np.ndarray, k: int, tol: TolerancePolicy):
    mod_k = psd_power(m.conj().T @ m, k / 2.0, tol)
    lead = mod_k @ m

    def f(x):
        cols, single = _as_columns(x)
        vals = _column_norms(lead, cols) - _column_norms(m, cols) ** (k + 1)
        return float(vals[0]) if single else vals

    return f


def _warm_starts(m: np.ndarray) -> np.ndarray:
    _, _, vh = np.linalg.svd(m)
    return vh.conj().T


def _reconcile(
    sphere: MembershipVerdict,
    pencil: MembershipVerdict,
    defect_fn,
    sphere_scale: float,
    pencil_scale: float,
    tol: TolerancePolicy,
    seed: int,
    label: str,
) -> MembershipVerdict:
    """Combine the two oracle verdicts into a single class verdict.

    The reported defect is always the exact defining-inequality value, and
    every NonMember verdict carries a witness that has been re-evaluated
    through that inequality. Decisively opposite oracles raise
    OracleDisagreement instead of picking a side.
    """
    threshold = tol.tol_decision * sphere_scale

    def nonmember_from(witness_vec: np.ndarray, lam: float | None, oracle: str):
        vec = witness_vec / np.linalg.norm(witness_vec)
        exact = float(defect_fn(vec))
        if exact > -threshold:
            return None
        return MembershipVerdict(
            status=Status.NON_MEMBER,
            defect=exact,
            oracle=oracle,
            witness=Witness(vector=vec, pencil_lambda=lam),
            threshold=threshold,
            seed=seed,
        )

    s_stat, p_stat = sphere.status, pencil.status
    if s_stat is p_stat:
        if s_stat is Status.NON_MEMBER:
            cands = []
            v = nonmember_from(sphere.witness.vector, None, "sphere")
            if v is not None:
                cands.append(v)
            v = nonmember_from(
                pencil.witness.vector, pencil.witness.pencil_lambda, "pencil"
            )
            if v is not None:
                cands.append(v)
            if cands:
                return min(cands, key=lambda v: v.defect)
            return MembershipVerdict(
                status=Status.INCONCLUSIVE,
                defect=sphere.defect,
                oracle="sphere",
                witness=sphere.witness,
                threshold=threshold,
                seed=seed,
            )
        return MembershipVerdict(
            status=s_stat,
            defect=sphere.defect,
            oracle="sphere",
            witness=sphere.witness,
            threshold=threshold,
            seed=seed,
        )

    definite_s = sphere.is_definite
    definite_p = pencil.is_definite
    if definite_s and definite_p:
        s_norm = sphere.defect / sphere_scale
        p_norm = pencil.defect / pencil_scale
        if (
            abs(s_norm) > 10.0 * tol.tol_decision
            and abs(p_norm) > 10.0 * tol.tol_decision
        ):
            raise OracleDisagreement(
                f"{label}: sphere says {s_stat.value} (defect {sphere.defect:.3e}) "
                f"but pencil says {p_stat.value} (defect {pencil.defect:.3e})"
            )
        nm = sphere if s_stat is Status.NON_MEMBER else pencil
        lam = nm.witness.pencil_lambda if nm.oracle == "pencil" else None
        v = nonmember_from(nm.witness.vector, lam, nm.oracle)
        if v is not None:
            return v
        return MembershipVerdict(
            status=Status.INCONCLUSIVE,
            defect=sphere.defect,
            oracle="sphere",
            witness=sphere.witness,
            threshold=threshold,
            seed=seed,
        )

    definite = sphere if definite_s else pencil
    if definite.status is Status.NON_MEMBER:
        lam = definite.witness.pencil_lambda if definite.oracle == "pencil" else None
        v = nonmember_from(definite.witness.vector, lam, definite.oracle)
        if v is not None:
            return v
        return MembershipVerdict(
            status=Status.INCONCLUSIVE,
            defect=sphere.defect,
            oracle="sphere",
            witness=sphere.witness,
            threshold=threshold,
            seed=seed,
        )
    return MembershipVerdict(
        status=definite.status,
        defect=sphere.defect,
        oracle="sphere",
        witness=sphere.witness,
        threshold=threshold,
        seed=seed,
    )


def _dual_verdict(
    m: np.ndarray,
    defect_fn,
    pencil: PencilSpec,
    sphere_scale: float,
    tol: TolerancePolicy,
    seed: int,
    restarts: int,
    label: str,
) -> MembershipVerdict:
    sphere = sphere_check(
        defect_fn,
        m.shape[0],
        restarts,
        seed=seed,
        warm_starts=_warm_starts(m),
        scale=sphere_scale,
        tol=tol,
    )
    pv = pencil_check(pencil, tol)
    return _reconcile(
        sphere, pv, defect_fn, sphere_scale, pencil.scale, tol, seed, label
    )


def is_k_quasi_paranormal(
    t,
    k: int,
    tol: TolerancePolicy = DEFAULT_TOLERANCES,
    *,
    seed: int = 0,
    restarts: int = 8,
) -> MembershipVerdict:
    """||T^(k+1) x||^2 <= ||T^(k+2) x|| ||T^k x|| for all x; k = 0 is
    paranormality. Decided by both oracles."""
    m = as_operator(t)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if _zero_operator(m):
        return _member_zero()
    defect_fn = _quasi_defect_fn(m, k)
    pencil = quasi_paranormal_pencil(m, k, tol)
    scale = _scale(operator_norm(m), 2 * k + 2)
    return _dual_verdict(
        m, defect_fn, pencil, scale, tol, seed, restarts,
        f"k-quasi-paranormal[k={k}]",
    )


def is_k_paranormal(
    t,
    k: int,
    tol: TolerancePolicy = DEFAULT_TOLERANCES,
    *,
    seed: int = 0,
    restarts: int = 8,
) -> MembershipVerdict:
    """||T x||^(k+1) <= ||T^(k+1) x|| on unit vectors, via the closed-form
    inner minimization of the pencil over its parameter."""
    m = as_operator(t)
    if k < 1:
        raise ValueError("k must be a positive integer")
    if _zero_operator(m):
        return _member_zero()
    defect_fn = _k_paranormal_defect_fn(m, k)
    pencil = k_paranormal_pencil(m, k, tol)
    scale = _scale(operator_norm(m), k + 1)
    return _dual_verdict(
        m, defect_fn, pencil, scale, tol, seed, restarts, f"k-paranormal[k={k}]"
    )


def is_absolute_k_paranormal(
    t,
    k: int,
    tol: TolerancePolicy = DEFAULT_TOLERANCES,
    *,
    seed: int = 0,
    restarts: int = 8,
) -> MembershipVerdict:
    """|| |T|^k T x || >= ||T x||^(k+1) on unit vectors, |T| = (T*T)^(1/2)."""
    m = as_operator(t)
    if k < 1:
        raise ValueError("k must be a positive integer")
    if _zero_operator(m):
        return _member_zero()
    defect_fn = _absolute_k_paranormal_defect_fn(m, k, tol)
    pencil = absolute_k_paranormal_pencil(m, k, tol)
    scale = _scale(operator_norm(m), k + 1)
    return _dual_verdict(
        m, defect_fn, pencil, scale, tol, seed, restarts,
        f"absolute-k-paranormal[k={k}]",
    )


# ---------------------------------------------------------------------------
# Aggregate classification
# ---------------------------------------------------------------------------

DEFAULT_K_LIST = (1, 2, 3)
DEFAULT_P_LIST = (0.5,)


def classify_all(
    t,
    k_list=DEFAULT_K_LIST,
    p_list=DEFAULT_P_LIST,
    tol: TolerancePolicy = DEFAULT_TOLERANCES,
    *,
    seed: int = 0,
    restarts: int = 8,
) -> dict[OperatorClass, MembershipVerdict]:
    """Run every class predicate; keys follow the inclusion-chain order."""
    m = as_operator(t)
    ks = tuple(int(k) for k in k_list)
    ps = tuple(float(p) for p in p_list)
    out: dict[OperatorClass, MembershipVerdict] = {}
    out[OperatorClass.normal()] = is_normal(m, tol)
    out[OperatorClass.quasinormal()] = is_quasinormal(m, tol)
    out[OperatorClass.hyponormal()] = is_hyponormal(m, tol)
    for p in ps:
        out[OperatorClass.p_hyponormal(p)] = is_p_hyponormal(m, p, tol)
    out[OperatorClass.class_a()] = is_class_a(m, tol)
    out[OperatorClass.paranormal()] = is_k_quasi_paranormal(
        m, 0, tol, seed=seed, restarts=restarts
    )
    for k in ks:
        if k >= 1:
            out[OperatorClass.k_paranormal(k)] = is_k_paranormal(
                m, k, tol, seed=seed, restarts=restarts
            )
    for k in ks:
        if k >= 1:
            out[OperatorClass.absolute_k_paranormal(k)] = is_absolute_k_paranormal(
                m, k, tol, seed=seed, restarts=restarts
            )
    for k in ks:
        if k >= 1:
            out[OperatorClass.k_quasi_paranormal(k)] = is_k_quasi_paranormal(
                m, k, tol, seed=seed, restarts=restarts
            )
    out[OperatorClass.normaloid()] = is_normaloid(m, tol)
    return out


_CHAIN_MAIN = (
    OperatorClass.normal(),
    OperatorClass.quasinormal(),
    OperatorClass.hyponormal(),
)


def chain_violations(verdicts: dict[OperatorClass, MembershipVerdict]) -> list[str]:
    """Inclusion-chain consistency over definite verdicts.

    Checks the main chain normal -> quasinormal -> hyponormal ->
    p-hyponormal -> class A -> paranormal -> normaloid, the two k-indexed
    chains paranormal -> {k-paranormal, absolute-k-paranormal} -> normaloid,
    and monotonicity of k-quasi-paranormality in k. Inconclusive verdicts
    never participate.
    """

    def status(cls: OperatorClass) -> Status | None:
        v = verdicts.get(cls)
        return v.status if v is not None else None

    def implies(a: OperatorClass, b: OperatorClass, out: list[str]) -> None:
        sa, sb = status(a), status(b)
        if sa is Status.MEMBER and sb is Status.NON_MEMBER:
            out.append(f"{a} is Member but {b} is NonMember")

    problems: list[str] = []
    chain: list[OperatorClass] = list(_CHAIN_MAIN)
    chain.extend(sorted(c for c in verdicts if c.name == "PHyponormal"))
    chain.append(OperatorClass.class_a())
    chain.append(OperatorClass.paranormal())
    present = [c for c in chain if c in verdicts]
    for a, b in zip(present, present[1:]):
        implies(a, b, problems)
    if OperatorClass.paranormal() in verdicts and OperatorClass.normaloid() in verdicts:
        implies(OperatorClass.paranormal(), OperatorClass.normaloid(), problems)

    for name in ("KParanormal", "AbsoluteKParanormal"):
        for cls in sorted(c for c in verdicts if c.name == name):
            implies(OperatorClass.paranormal(), cls, problems)
            implies(cls, OperatorClass.normaloid(), problems)

    quasi = sorted(c for c in verdicts if c.name == "KQuasiParanormal")
    for cls in quasi:
        implies(OperatorClass.paranormal(), cls, problems)
    for i, a in enumerate(quasi):
        for b in quasi[i + 1 :]:
            implies(a, b, problems)
    return problems
