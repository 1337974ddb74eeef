"""Subproduct systems with two-dimensional components: the canonical families
E1..E5(lambda), axiom checking, duality with graded algebras, the full
classification pipeline, and a seeded generator of scrambled instances.

A system stores the comultiplication-style maps beta[s, t]: E_{s+t} ->
E_s (x) E_t as 4x2 matrices for s + t <= horizon.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classify import Triple, TripleClass, classify_triple
from .graded import GradedAlgebra, extend_morphism, is_isomorphism
from .tensorlinalg import DEFAULT_EPS, Subspace, as_cmat

_I2 = np.eye(2, dtype=complex)

SYSTEM_LABELS = ("E1", "E2", "E3", "E4", "E5")

# the class of the degree-(1,1,1) triple determines the system family
_TRIPLE_TO_SYSTEM = {"C1": "E1", "C2": "E2", "C3": "E3", "C4": "E4", "C5": "E5"}
_SYSTEM_TO_TRIPLE = {v: k for k, v in _TRIPLE_TO_SYSTEM.items()}


class ClassifyStageError(ValueError):
    """Pipeline failure carrying the stage where it occurred."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


@dataclass(frozen=True)
class SystemLabel:
    label: str  # E1..E5
    lam: complex | None = None

    def __post_init__(self):
        if self.label not in SYSTEM_LABELS:
            raise ValueError(f"unknown system label {self.label!r}")
        if self.label == "E3":
            if self.lam is None or self.lam == 0:
                raise ValueError("E3 requires a nonzero lambda")
        elif self.lam is not None:
            raise ValueError(f"label {self.label} carries no lambda")

    def triple_class(self) -> TripleClass:
        return TripleClass(_SYSTEM_TO_TRIPLE[self.label], self.lam)

    @classmethod
    def from_triple_class(cls, c: TripleClass) -> "SystemLabel":
        return cls(_TRIPLE_TO_SYSTEM[c.label], c.lam)


@dataclass(frozen=True)
class SubproductSystem:
    """beta[s, t] is the 4x2 map E_{s+t} -> E_s (x) E_t, for s + t <= horizon."""

    horizon: int
    beta: dict = field(repr=False)

    def __post_init__(self):
        if self.horizon < 3:
            raise ValueError("horizon must be at least 3")
        maps = {}
        for (s, t), b in self.beta.items():
            b = as_cmat(b)
            if b.shape != (4, 2):
                raise ValueError(f"beta[{s},{t}] must be 4x2")
            maps[(s, t)] = b
        for s in range(1, self.horizon):
            for t in range(1, self.horizon - s + 1):
                if (s, t) not in maps:
                    raise ValueError(f"missing map beta[{s},{t}]")
        object.__setattr__(self, "beta", maps)

    def index_pairs(self):
        for s in range(1, self.horizon):
            for t in range(1, self.horizon - s + 1):
                yield (s, t)

    def index_triples(self):
        for r in range(1, self.horizon - 1):
            for s in range(1, self.horizon - r):
                for t in range(1, self.horizon - r - s + 1):
                    yield (r, s, t)


@dataclass(frozen=True)
class SystemIso:
    """Per-level invertible maps theta[t] carrying one system onto another:
    (theta_s (x) theta_t) beta[s, t] = beta'[s, t] theta_{s+t}."""

    theta: dict = field(repr=False)

    def level(self, t: int) -> np.ndarray:
        return self.theta[t]


def iso_residuals(src: SubproductSystem, dst: SubproductSystem,
                  iso: SystemIso) -> dict:
    """Per-pair intertwining residuals of an iso from `src` onto `dst`.

    Residuals are relative: the defect is scaled by the magnitude of the
    compared maps, since the level maps of an isomorphism carry no preferred
    normalization and their norms can grow geometrically with the level.
    """
    out = {}
    for s, t in src.index_pairs():
        lhs = np.kron(iso.theta[s], iso.theta[t]) @ src.beta[(s, t)]
        rhs = dst.beta[(s, t)] @ iso.theta[s + t]
        scale = max(1.0, float(np.abs(lhs).max()), float(np.abs(rhs).max()))
        out[(s, t)] = float(np.abs(lhs - rhs).max()) / scale
    return out


def _canonical_beta(label: SystemLabel, s: int) -> np.ndarray:
    """The 4x2 map beta[s, t] of the canonical family (independent of t)."""
    b = np.zeros((4, 2), dtype=complex)
    name = label.label
    if name == "E1":
        b[0, 0] = 1  # e1 -> e1 (x) e1
        b[3, 1] = 1  # e2 -> e2 (x) e2
    elif name == "E2":
        if s % 2 == 0:
            b[0, 0] = 1
            b[3, 1] = 1
        else:
            b[1, 0] = 1  # e1 -> e1 (x) e2
            b[2, 1] = 1  # e2 -> e2 (x) e1
    elif name == "E3":
        b[0, 0] = 1
        b[2, 1] = 1                 # e2 (x) e1
        b[1, 1] = label.lam ** s    # + lam^s e1 (x) e2
    elif name == "E4":
        b[0, 0] = 1
        b[2, 1] = 1
    else:  # E5
        b[0, 0] = 1
        b[1, 1] = 1
    return b


def canonical_system(label: SystemLabel, horizon: int = 6) -> SubproductSystem:
    """The canonical representative of each isomorphism class."""
    beta = {}
    for s in range(1, horizon):
        bs = _canonical_beta(label, s)
        for t in range(1, horizon - s + 1):
            beta[(s, t)] = bs
    return SubproductSystem(horizon=horizon, beta=beta)


@dataclass(frozen=True)
class AxiomReport:
    passed: bool
    worst_associativity_residual: float
    first_failing_triple: tuple | None
    injectivity_failures: tuple
    min_singular_value: float


def check_axioms(sys: SubproductSystem, eps: float = DEFAULT_EPS) -> AxiomReport:
    inj_failures = []
    min_sv = np.inf
    for s, t in sys.index_pairs():
        sv = np.linalg.svd(sys.beta[(s, t)], compute_uv=False)
        min_sv = min(min_sv, float(sv[1]))
        if sv[1] <= eps * max(sv[0], 1.0):
            inj_failures.append((s, t))
    worst = 0.0
    first_fail = None
    scale = max(np.abs(b).max() for b in sys.beta.values())
    tol = max(eps, 1e-12) * max(scale * scale, 1.0)
    for r, s, t in sys.index_triples():
        left = np.kron(sys.beta[(r, s)], _I2) @ sys.beta[(r + s, t)]
        right = np.kron(_I2, sys.beta[(s, t)]) @ sys.beta[(r, s + t)]
        residual = float(np.abs(left - right).max())
        if residual > worst:
            worst = residual
        if residual > tol and first_fail is None:
            first_fail = (r, s, t)
    passed = not inj_failures and first_fail is None
    return AxiomReport(
        passed=passed,
        worst_associativity_residual=worst,
        first_failing_triple=first_fail,
        injectivity_failures=tuple(inj_failures),
        min_singular_value=float(min_sv),
    )


def triple_of_system(sys: SubproductSystem, eps: float = DEFAULT_EPS) -> Triple:
    """The degree-(1, 2, 3) data: E2 = Im beta[1,1], E3 the common composite image."""
    b11 = sys.beta[(1, 1)]
    via_left = np.kron(b11, _I2) @ sys.beta[(2, 1)]
    via_right = np.kron(_I2, b11) @ sys.beta[(1, 2)]
    scale = max(np.abs(via_left).max(), np.abs(via_right).max(), 1.0)
    if np.abs(via_left - via_right).max() > max(np.sqrt(eps), 1e-8) * scale:
        raise ClassifyStageError(
            "triple", "the two degree-3 composites disagree (associativity failure)"
        )
    return Triple(
        E2=Subspace.from_spanning(b11, eps=eps),
        E3=Subspace.from_spanning(via_left, eps=eps),
    )


def dualize(obj):
    """Transpose duality between systems and graded algebras (an involution)."""
    if isinstance(obj, SubproductSystem):
        return GradedAlgebra(
            horizon=obj.horizon,
            M={k: b.T.copy() for k, b in obj.beta.items()},
        )
    if isinstance(obj, GradedAlgebra):
        return SubproductSystem(
            horizon=obj.horizon,
            beta={k: m.T.copy() for k, m in obj.M.items()},
        )
    raise TypeError("dualize expects a SubproductSystem or a GradedAlgebra")


def classify_system(sys: SubproductSystem, eps: float = DEFAULT_EPS):
    """Label + explicit per-level isomorphism onto the canonical system.

    Pipeline: extract the degree-(1,2,3) triple, classify it, dualize both the
    input and the canonical system, extend the (transposed) triple isomorphism
    to a graded-algebra morphism, and transpose back.
    """
    report = check_axioms(sys, eps)
    if not report.passed:
        raise ClassifyStageError("axioms", f"input fails the axioms: {report}")
    triple = triple_of_system(sys, eps)
    try:
        cls, tri_iso = classify_triple(triple, eps)
    except ValueError as exc:
        raise ClassifyStageError("classify-triple", str(exc)) from exc
    label = SystemLabel.from_triple_class(cls)

    canonical = canonical_system(label, sys.horizon)
    g_sys = dualize(sys)
    g_can = dualize(canonical)
    theta1 = tri_iso.theta.T  # canonical degree-1 component -> system component
    theta2 = g_sys.M[(1, 1)] @ np.kron(theta1, theta1) @ np.linalg.pinv(g_can.M[(1, 1)])
    try:
        morphism = extend_morphism(g_can, g_sys, theta1, theta2, eps)
    except ValueError as exc:
        raise ClassifyStageError("extend-morphism", str(exc)) from exc
    if not is_isomorphism(morphism, eps):
        raise ClassifyStageError("extend-morphism", "extended morphism is singular")
    iso = SystemIso(theta={t: m.T.copy() for t, m in morphism.theta.items()})
    return label, iso


def random_system(label: SystemLabel, seed: int, horizon: int = 6,
                  max_cond: float = 50.0) -> SubproductSystem:
    """Canonical system conjugated by seeded random invertible level maps.

    beta'[s, t] = (g_s (x) g_t) beta[s, t] g_{s+t}^{-1}; deterministic for a
    fixed seed, and classifies back to `label`.
    """
    rng = np.random.default_rng(seed)
    base = canonical_system(label, horizon)
    g = {}
    for t in range(1, horizon + 1):
        while True:
            cand = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            if np.linalg.cond(cand) <= max_cond:
                g[t] = cand
                break
    beta = {}
    for s, t in base.index_pairs():
        beta[(s, t)] = (
            np.kron(g[s], g[t]) @ base.beta[(s, t)] @ np.linalg.inv(g[s + t])
        )
    return SubproductSystem(horizon=horizon, beta=beta)
