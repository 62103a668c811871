"""Classical echo-state network reservoir.

State update (leaky tanh form):

    x_n = (1 - alpha) * x_{n-1} + alpha * tanh(W_in u_n + W x_{n-1})

The activation is tanh throughout (the element-wise sigmoid-family
nonlinearity); no output feedback enters the state update.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse.linalg

from .base import Reservoir
from .rng import Xoshiro256

_DENSE_EIG_LIMIT = 8  # below this, ARPACK is not applicable; use dense eigvals


@dataclass(frozen=True)
class EsnParams:
    """Reservoir construction parameters.

    Spectral radius, density and input scale are conventional defaults;
    all are config-exposed.
    """

    n_x: int = 100
    n_u: int = 1
    alpha: float = 0.3          # leaking rate, in (0, 1]
    spectral_radius: float = 0.9
    input_scale: float = 0.5
    density: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.n_x < 1:
            raise ValueError("n_x must be >= 1")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError("alpha must lie in (0, 1]")
        if not 0.0 < self.density <= 1.0:
            raise ValueError("density must lie in (0, 1]")
        if self.spectral_radius <= 0 or self.input_scale <= 0:
            raise ValueError("spectral_radius and input_scale must be positive")


def spectral_radius(W: np.ndarray, tol: float = 1e-10,
                    max_iter: int = 10000, seed: int = 0x5EED) -> float:
    """Largest eigenvalue modulus of a real square matrix.

    Uses implicitly restarted Arnoldi iteration (ARPACK) with a seeded
    start vector; tiny matrices fall back to a dense eigenvalue solve.
    Raises RuntimeError with a diagnostic when the iteration fails to
    converge within ``max_iter`` iterations at tolerance ``tol``.
    """
    W = np.asarray(W, dtype=float)
    n = W.shape[0]
    if n < _DENSE_EIG_LIMIT:
        return float(np.max(np.abs(np.linalg.eigvals(W))))
    v0 = Xoshiro256(seed).uniform(-1.0, 1.0, n)
    try:
        vals = scipy.sparse.linalg.eigs(W, k=1, which="LM", v0=v0,
                                        tol=tol, maxiter=max_iter,
                                        return_eigenvectors=False)
    except scipy.sparse.linalg.ArpackNoConvergence as exc:
        raise RuntimeError(
            f"spectral-radius iteration did not converge within {max_iter} "
            f"iterations at tol={tol}: {exc}") from exc
    return float(np.abs(vals[0]))


class EsnReservoir(Reservoir):
    """Echo-state network with fixed random weights."""

    def __init__(self, params: EsnParams):
        self.params = params
        rng = Xoshiro256(params.seed)
        n = params.n_x
        self.w_in = rng.uniform(-params.input_scale, params.input_scale,
                                (n, params.n_u))
        w = rng.uniform(-1.0, 1.0, (n, n))
        mask = rng.random((n, n)) < params.density
        w = np.where(mask, w, 0.0)
        rho = spectral_radius(w)
        if rho == 0.0:
            raise ValueError(
                "sampled recurrent matrix has spectral radius 0; "
                "increase density or n_x")
        self.w = w * (params.spectral_radius / rho)
        self.feature_width = n
        self.x = np.zeros(n)

    def reset(self) -> None:
        # zero initial state: the fading-memory-neutral choice
        self.x = np.zeros(self.params.n_x)

    def step(self, u) -> None:
        u = np.atleast_1d(np.asarray(u, dtype=float))
        if u.shape[0] != self.params.n_u:
            raise ValueError(f"expected {self.params.n_u} input values, got {u.shape[0]}")
        self.x = esn_step(self.x, u, self.w_in, self.w, self.params.alpha)

    def observe(self) -> np.ndarray:
        return self.x.copy()


def esn_step(x: np.ndarray, u: np.ndarray, w_in: np.ndarray, w: np.ndarray,
             alpha: float) -> np.ndarray:
    """One leaky-tanh update of the neural activations."""
    if w_in.shape[1] != u.shape[0] or w.shape[1] != x.shape[0]:
        raise ValueError("dimension mismatch in ESN update")
    return (1.0 - alpha) * x + alpha * np.tanh(w_in @ u + w @ x)


def build_esn(params: EsnParams) -> EsnReservoir:
    """Construct an ESN reservoir; deterministic under a fixed seed."""
    return EsnReservoir(params)
