"""Two-dimensional algebras D1..D7, graded algebras built from (D, eta),
automorphism twists, the kernel/image conditions, and morphism extension.

A 2-dim algebra is a 2x4 structure-constant matrix sending coordinates of
x (x) y to coordinates of xy.  A graded algebra stores its multiplication
maps M[s, t] (2x4 each) up to a finite horizon.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tensorlinalg import DEFAULT_EPS, Subspace, _null_space, as_cmat, subspace_sum

_I2 = np.eye(2, dtype=complex)

CATALOG_NAMES = ("D1", "D2", "D3", "D4", "D5", "D6", "D7")

# columns indexed by (i, j) -> 2(i-1) + (j-1): e1e1, e1e2, e2e1, e2e2
_CATALOG_TABLES = {
    "D1": [[1, 0, 0, 0], [0, 0, 0, 1]],  # (a1 b1, a2 b2)
    "D2": [[1, 0, 0, 0], [0, 1, 1, 0]],  # (a1 b1, a2 b1 + a1 b2)
    "D3": [[1, 0, 0, 0], [0, 0, 1, 0]],  # (a1 b1, a2 b1)
    "D4": [[1, 0, 0, 0], [0, 1, 0, 0]],  # (a1 b1, a1 b2)
    "D5": [[1, 0, 0, 0], [0, 0, 0, 0]],  # (a1 b1, 0)
    "D6": [[0, 0, 0, 0], [1, 0, 0, 0]],  # (0, a1 b1)
    "D7": [[0, 0, 0, 0], [0, 0, 0, 0]],  # (0, 0)
}


class NotAutomorphismError(ValueError):
    pass


class MorphismError(ValueError):
    pass


class NotExtendableError(MorphismError):
    pass


@dataclass(frozen=True)
class Algebra2:
    """A two-dimensional algebra given by its structure constants."""

    mult: np.ndarray = field(repr=False)
    name: str | None = None

    def __post_init__(self):
        m = as_cmat(self.mult)
        if m.shape != (2, 4):
            raise ValueError("structure constants must form a 2x4 matrix")
        object.__setattr__(self, "mult", m)

    def multiply(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y, dtype=complex)
        return self.mult @ np.kron(x, y)

    def associativity_residual(self) -> float:
        left = self.mult @ np.kron(self.mult, _I2)
        right = self.mult @ np.kron(_I2, self.mult)
        return float(np.abs(left - right).max())

    def is_associative(self, eps: float = DEFAULT_EPS) -> bool:
        return self.associativity_residual() <= eps


def catalog(name: str) -> Algebra2:
    """The seven two-dimensional algebras; D1..D4 have surjective
    multiplication, D5..D7 do not."""
    if name not in _CATALOG_TABLES:
        raise ValueError(f"unknown catalog algebra {name!r}")
    return Algebra2(mult=np.array(_CATALOG_TABLES[name], dtype=complex), name=name)


def check_surjective_mult(d: Algebra2, eps: float = DEFAULT_EPS) -> bool:
    s = np.linalg.svd(d.mult, compute_uv=False)
    return bool(s[0] > eps and s[1] > eps * s[0])


def is_automorphism(d: Algebra2, m, eps: float = DEFAULT_EPS) -> bool:
    """True iff m is invertible and multiplicative for d."""
    m = as_cmat(m)
    if m.shape != (2, 2):
        return False
    s = np.linalg.svd(m, compute_uv=False)
    if s[1] <= eps * max(s[0], 1.0):
        return False
    residual = np.abs(d.mult @ np.kron(m, m) - m @ d.mult).max()
    return bool(residual <= max(eps, 1e-9) * max(1.0, float(s[0]) ** 2))


_SWAP = np.array([[0, 1], [1, 0]], dtype=complex)


@dataclass(frozen=True)
class AutomorphismFamily:
    """Closed-form description of an algebra's automorphism group.

    `maps` lists the isolated automorphisms; `one_parameter` (for D2) maps a
    nonzero scalar to the member of the continuous family.
    """

    algebra: str
    maps: tuple
    one_parameter: object | None = None
    description: str = ""

    def sample(self, lam: complex | None = None) -> np.ndarray:
        if self.one_parameter is not None and lam is not None:
            return self.one_parameter(lam)
        return self.maps[0]


def automorphism_description(name: str) -> AutomorphismFamily:
    if name == "D1":
        return AutomorphismFamily(
            algebra="D1",
            maps=(_I2.copy(), _SWAP.copy()),
            description="identity and the coordinate swap",
        )
    if name == "D2":
        return AutomorphismFamily(
            algebra="D2",
            maps=(_I2.copy(),),
            one_parameter=lambda lam: np.array([[1, 0], [0, lam]], dtype=complex),
            description="(a1, a2) -> (a1, lam a2) for nonzero lam",
        )
    if name in ("D3", "D4"):
        return AutomorphismFamily(
            algebra=name, maps=(_I2.copy(),), description="identity only"
        )
    raise ValueError(f"automorphism description only covers D1..D4, not {name!r}")


@dataclass(frozen=True)
class GradedAlgebra:
    """Multiplication maps M[s, t]: 2x4 matrices for s + t <= horizon."""

    horizon: int
    M: dict = field(repr=False)

    def __post_init__(self):
        if self.horizon < 3:
            raise ValueError("horizon must be at least 3")
        maps = {}
        for (s, t), m in self.M.items():
            m = as_cmat(m)
            if m.shape != (2, 4):
                raise ValueError(f"M[{s},{t}] must be 2x4")
            maps[(s, t)] = m
        for s in range(1, self.horizon):
            for t in range(1, self.horizon - s + 1):
                if (s, t) not in maps:
                    raise ValueError(f"missing multiplication map M[{s},{t}]")
        object.__setattr__(self, "M", maps)

    def index_pairs(self):
        for s in range(1, self.horizon):
            for t in range(1, self.horizon - s + 1):
                yield (s, t)

    def index_triples(self):
        for r in range(1, self.horizon - 1):
            for s in range(1, self.horizon - r):
                for t in range(1, self.horizon - r - s + 1):
                    yield (r, s, t)

    def triple_product_map(self, r: int, s: int, t: int) -> np.ndarray:
        """M[r, s, t] as a 2x8 matrix."""
        return self.M[(r + s, t)] @ np.kron(self.M[(r, s)], _I2)

    def associativity_residual(self) -> float:
        worst = 0.0
        for r, s, t in self.index_triples():
            left = self.M[(r + s, t)] @ np.kron(self.M[(r, s)], _I2)
            right = self.M[(r, s + t)] @ np.kron(_I2, self.M[(s, t)])
            worst = max(worst, float(np.abs(left - right).max()))
        return worst

    def iterated_product(self, n: int) -> np.ndarray:
        """The n-fold product map on degree-1 elements, a 2 x 2^n matrix."""
        if not 1 <= n <= self.horizon:
            raise ValueError("n must lie in 1..horizon")
        out = _I2
        for k in range(1, n):
            out = self.M[(k, 1)] @ np.kron(out, _I2)
        return out


def build_graded(d: Algebra2, eta, horizon: int, eps: float = DEFAULT_EPS) -> GradedAlgebra:
    """The graded algebra with product x *_B y = x *_D eta^s(y)."""
    eta = as_cmat(eta)
    if not is_automorphism(d, eta, eps):
        raise NotAutomorphismError("eta is not an automorphism of the algebra")
    maps = {}
    powers = {0: _I2}
    for s in range(1, horizon):
        powers[s] = powers[s - 1] @ eta
    for s in range(1, horizon):
        for t in range(1, horizon - s + 1):
            maps[(s, t)] = d.mult @ np.kron(_I2, powers[s])
    g = GradedAlgebra(horizon=horizon, M=maps)
    residual = g.associativity_residual()
    if residual > max(eps, 1e-9) * 100:
        raise MorphismError(f"construction produced associativity residual {residual}")
    return g


def _as_level_maps(f, horizon: int) -> dict:
    if callable(f):
        return {t: as_cmat(f(t)) for t in range(1, horizon + 1)}
    return {t: as_cmat(f[t]) for t in range(1, horizon + 1)}


def graded_automorphism_residual(g: GradedAlgebra, f: dict) -> float:
    worst = 0.0
    for s, t in g.index_pairs():
        lhs = f[s + t] @ g.M[(s, t)]
        rhs = g.M[(s, t)] @ np.kron(f[s], f[t])
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def twist(g: GradedAlgebra, f, eps: float = DEFAULT_EPS) -> GradedAlgebra:
    """The twisted algebra with product (x, y) -> x f_t^s(y)."""
    levels = _as_level_maps(f, g.horizon)
    for t, m in levels.items():
        s = np.linalg.svd(m, compute_uv=False)
        if s[1] <= eps * max(s[0], 1.0):
            raise NotAutomorphismError(f"level-{t} map is not invertible")
    residual = graded_automorphism_residual(g, levels)
    if residual > max(np.sqrt(eps), 1e-7):
        raise NotAutomorphismError(
            f"per-level family is not multiplicative (residual {residual})"
        )
    maps = {}
    for s, t in g.index_pairs():
        maps[(s, t)] = g.M[(s, t)] @ np.kron(_I2, np.linalg.matrix_power(levels[t], s))
    return GradedAlgebra(horizon=g.horizon, M=maps)


def check_image_condition(g: GradedAlgebra, eps: float = DEFAULT_EPS) -> bool:
    """All M[s, t] surjective; iterated products are checked directly too."""
    for s, t in g.index_pairs():
        sv = np.linalg.svd(g.M[(s, t)], compute_uv=False)
        if sv[1] <= eps * max(sv[0], 1.0):
            return False
    for n in range(2, g.horizon + 1):
        sv = np.linalg.svd(g.iterated_product(n), compute_uv=False)
        if sv[1] <= eps * max(sv[0], 1.0):
            return False
    return True


def kernel_subspace(m: np.ndarray, eps: float = DEFAULT_EPS) -> Subspace:
    m = as_cmat(m)
    return Subspace(m.shape[1], _null_space(m, eps))


def _kernel_sum_side(g: GradedAlgebra, r: int, s: int, t: int,
                     eps: float) -> Subspace:
    """(Ker M[r, s]) (x) A_t + A_r (x) Ker M[s, t] inside the 8-dim space."""
    k_rs = kernel_subspace(g.M[(r, s)], eps)
    k_st = kernel_subspace(g.M[(s, t)], eps)
    left = Subspace(8, np.kron(k_rs.basis, _I2)) if k_rs.dim else Subspace.zero(8)
    right = Subspace(8, np.kron(_I2, k_st.basis)) if k_st.dim else Subspace.zero(8)
    return subspace_sum(left, right, eps)


def check_kernel_condition(g: GradedAlgebra, eps: float = DEFAULT_EPS) -> bool:
    """Ker M[r, s, t] equals the sum of the two partial kernels, for all triples.

    The one-sided containment (partial kernels inside the triple kernel) is a
    structural fact and is asserted unconditionally as a sanity check.
    """
    tol = max(np.sqrt(eps), 1e-8)
    for r, s, t in g.index_triples():
        m3 = g.triple_product_map(r, s, t)
        k3 = kernel_subspace(m3, eps)
        side = _kernel_sum_side(g, r, s, t, eps)
        if side.dim:
            leak = np.abs(m3 @ side.basis).max()
            if leak > tol * max(1.0, np.abs(m3).max()):
                raise RuntimeError(
                    "partial kernels escape the triple kernel; "
                    "the graded data is inconsistent"
                )
        if not k3.equals(side, tol):
            return False
    return True


@dataclass(frozen=True)
class GradedMorphism:
    """Per-level maps theta[t] of a morphism between two graded algebras."""

    source: GradedAlgebra = field(repr=False)
    target: GradedAlgebra = field(repr=False)
    theta: dict = field(repr=False)

    def residual(self) -> float:
        worst = 0.0
        for s, t in self.source.index_pairs():
            lhs = self.theta[s + t] @ self.source.M[(s, t)]
            rhs = self.target.M[(s, t)] @ np.kron(self.theta[s], self.theta[t])
            worst = max(worst, float(np.abs(lhs - rhs).max()))
        return worst

    def level_residuals(self) -> dict:
        out = {}
        for s, t in self.source.index_pairs():
            lhs = self.theta[s + t] @ self.source.M[(s, t)]
            rhs = self.target.M[(s, t)] @ np.kron(self.theta[s], self.theta[t])
            out[(s, t)] = float(np.abs(lhs - rhs).max())
        return out


def is_isomorphism(m: GradedMorphism, eps: float = DEFAULT_EPS) -> bool:
    for t in range(1, m.source.horizon + 1):
        sv = np.linalg.svd(m.theta[t], compute_uv=False)
        if sv[1] <= eps * max(sv[0], 1.0):
            return False
    return True


def extend_morphism(gA: GradedAlgebra, gB: GradedAlgebra, theta1, theta2,
                    eps: float = DEFAULT_EPS, rng=None) -> GradedMorphism:
    """Extend (theta1, theta2) to a full graded morphism gA -> gB.

    Requires gA to satisfy the image and kernel conditions.  theta_n is the
    unique map factoring the n-fold target product through the n-fold source
    product; preimages default to the minimum-norm choice, or are randomized
    with `rng` (the result is the same either way, which is tested).
    """
    if gA.horizon != gB.horizon:
        raise MorphismError("source and target horizons differ")
    theta1 = as_cmat(theta1)
    theta2 = as_cmat(theta2)
    if not check_image_condition(gA, eps):
        raise MorphismError("source algebra fails the image condition")
    if not check_kernel_condition(gA, eps):
        raise MorphismError("source algebra fails the kernel condition")
    compat = np.abs(
        theta2 @ gA.M[(1, 1)] - gB.M[(1, 1)] @ np.kron(theta1, theta1)
    ).max()
    if compat > max(np.sqrt(eps), 1e-8):
        raise MorphismError(f"theta2 is incompatible with theta1 (residual {compat})")

    theta = {1: theta1, 2: theta2}
    # theta_n is determined by factoring through M[n-1, 1]; the one-step
    # recursion is algebraically the same as factoring the n-fold product
    # through theta1^{(x) n} but avoids amplifying cond(theta1)^n
    for n in range(3, gA.horizon + 1):
        ma = gA.M[(n - 1, 1)]
        rhs = gB.M[(n - 1, 1)] @ np.kron(theta[n - 1], theta1)
        kernel = _null_space(ma, eps)
        if kernel.shape[1]:
            leak = np.abs(rhs @ kernel).max()
            if leak > max(np.sqrt(eps), 1e-8) * max(1.0, np.abs(rhs).max()):
                raise NotExtendableError(
                    f"theta_{n} is not well defined (kernel leak {leak})"
                )
        pre = np.linalg.pinv(ma)
        if rng is not None and kernel.shape[1]:
            pre = pre + kernel @ (
                rng.standard_normal((kernel.shape[1], 2))
                + 1j * rng.standard_normal((kernel.shape[1], 2))
            )
        theta[n] = rhs @ pre
    return GradedMorphism(source=gA, target=gB, theta=theta)
