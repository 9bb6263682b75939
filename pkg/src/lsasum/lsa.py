"""Thin SVD with explicit rank handling, plus the concept-count policy.

The decomposition is delegated to LAPACK (bidiagonalization route) via
numpy; the contract here is the invariant set: reconstruction, orthonormal
factors, nonincreasing singular values, and a relative rank cutoff. Singular
vector signs are not pinned down (u_i, v_i) -> (-u_i, -v_i) is an equally
valid factorization and downstream scoring must not depend on it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError, DataError

RANK_RTOL = 1e-10  # singular values <= RANK_RTOL * sigma_1 count as zero

FIXED = "fixed"
RATIO = "ratio"


@dataclass(frozen=True, eq=False)
class SvdResult:
    """Thin SVD a = u @ diag(sigma) @ vt truncated to effective rank r.

    u is (m, r), sigma (r,) strictly positive nonincreasing, vt (r, n).
    k <= r is the concept count later stages actually use; decompose()
    initializes it to r and choose_k() refines it.
    """

    u: np.ndarray
    sigma: np.ndarray
    vt: np.ndarray
    k: int

    @property
    def rank(self) -> int:
        return len(self.sigma)


def decompose(a: np.ndarray) -> SvdResult:
    """Factor a real matrix, dropping singular values below the rank cutoff.

    A zero (or empty) matrix yields rank 0 with empty factors; callers treat
    that as "no concepts" rather than an error. Non-finite input raises
    DataError.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2:
        raise DataError(f"expected a 2-d matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise DataError("matrix contains non-finite values")
    m, n = a.shape
    if a.size == 0 or not a.any():
        return SvdResult(
            u=np.zeros((m, 0)), sigma=np.zeros(0), vt=np.zeros((0, n)), k=0
        )
    u, sigma, vt = np.linalg.svd(a, full_matrices=False)
    cutoff = RANK_RTOL * sigma[0]
    r = int(np.count_nonzero(sigma > cutoff))
    return SvdResult(u=u[:, :r], sigma=sigma[:r], vt=vt[:r], k=r)


@dataclass(frozen=True)
class DimensionPolicy:
    """How many leading concepts to keep: fixed(k0) or ratio(rho)."""

    kind: str
    value: float

    @classmethod
    def fixed(cls, k0: int) -> "DimensionPolicy":
        return cls(FIXED, k0)

    @classmethod
    def ratio(cls, rho: float) -> "DimensionPolicy":
        return cls(RATIO, rho)

    @classmethod
    def default(cls) -> "DimensionPolicy":
        return cls(RATIO, 0.5)


def choose_k(sigma: np.ndarray, policy: DimensionPolicy) -> int:
    """Concept count under `policy`.

    fixed(k0) gives min(k0, rank); ratio(rho) counts singular values at least
    rho * sigma_1. Invalid policy values raise ConfigError. Rank-0 input
    (empty sigma) gives 0 regardless of policy.
    """
    sigma = np.asarray(sigma, dtype=np.float64)
    if policy.kind == FIXED:
        k0 = int(policy.value)
        if k0 != policy.value or k0 < 1:
            raise ConfigError(f"fixed dimension must be an integer >= 1, got {policy.value}")
        return min(k0, len(sigma))
    if policy.kind == RATIO:
        rho = float(policy.value)
        if not 0.0 < rho <= 1.0:
            raise ConfigError(f"dimension ratio must be in (0, 1], got {rho}")
        if len(sigma) == 0:
            return 0
        return int(np.count_nonzero(sigma >= rho * sigma[0]))
    raise ConfigError(f"unknown dimension policy kind {policy.kind!r}")


def with_dimension(result: SvdResult, policy: DimensionPolicy) -> SvdResult:
    """Copy of `result` with k set by `policy`."""
    return replace(result, k=choose_k(result.sigma, policy))
