"""Ridge-regression readout shared by every reservoir back-end.

Conventions (the source text leaves the orientation open, so it is fixed
here and asserted in tests): state-matrix columns are time steps, each
column the concatenation [1; u_n; x_n]; the target matrix Y has one row
per output channel and one column per time step, so the trained weights
satisfy Y ~ W_out @ X.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

_FORMAT_TAG = "reservoirlab-readout v1"


@dataclass(frozen=True)
class ReadoutModel:
    """Trained output weights W_out (n_outputs x (1 + n_u + n_x)) plus the
    regularization used to obtain them."""

    w_out: np.ndarray
    beta: float

    def __post_init__(self):
        w = np.asarray(self.w_out, dtype=float)
        if w.ndim != 2 or not np.all(np.isfinite(w)):
            raise ValueError("w_out must be a finite 2-d matrix")
        if self.beta < 0:
            raise ValueError("beta must be non-negative")
        object.__setattr__(self, "w_out", w)


def assemble_state_matrix(inputs: np.ndarray, states) -> np.ndarray:
    """Stack columns [1; u_n; x_n] for each time step.

    ``inputs`` is (steps, n_u) (or 1-d), ``states`` is (steps, n_x) or a
    sequence of state vectors; both after washout removal.
    """
    u = np.asarray(inputs, dtype=float)
    if u.ndim == 1:
        u = u[:, None]
    x = np.asarray(states, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if u.shape[0] == 0 or x.shape[0] == 0:
        raise ValueError("cannot assemble a state matrix from empty sequences")
    if u.shape[0] != x.shape[0]:
        raise ValueError(f"length mismatch: {u.shape[0]} inputs vs {x.shape[0]} states")
    X = np.vstack([np.ones((1, u.shape[0])), u.T, x.T])
    if X.shape[1] < X.shape[0]:
        warnings.warn(
            f"state matrix has fewer columns ({X.shape[1]}) than rows "
            f"({X.shape[0]}); the readout will interpolate", stacklevel=2)
    return X


def default_beta(X: np.ndarray) -> float:
    """Scale-free conditioning floor: 1e-8 * trace(X X^T) / rows."""
    X = np.asarray(X, dtype=float)
    return 1e-8 * float(np.sum(X * X)) / X.shape[0]


def washout_length(n_steps: int) -> int:
    """Default washout: first 10% of the steps, capped at 200."""
    return min(n_steps // 10, 200)


def train_ridge(X: np.ndarray, y_target: np.ndarray, beta: float) -> ReadoutModel:
    """Closed-form ridge solution W_out = Y X^T (X X^T + beta I)^-1.

    Solved through a symmetric positive-definite (Cholesky) factorization
    of X X^T + beta I rather than an explicit inverse.
    """
    X = np.asarray(X, dtype=float)
    Y = np.asarray(y_target, dtype=float)
    if Y.ndim == 1:
        Y = Y[None, :]
    if Y.shape[1] != X.shape[1]:
        raise ValueError(f"target columns ({Y.shape[1]}) must match state "
                         f"matrix columns ({X.shape[1]})")
    if beta < 0:
        raise ValueError("beta must be non-negative")
    G = X @ X.T
    G[np.diag_indices_from(G)] += beta
    try:
        cho = scipy.linalg.cho_factor(G, lower=True)
    except scipy.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(
            "X X^T + beta I is singular; use beta > 0 to regularize"
        ) from exc
    w = scipy.linalg.cho_solve(cho, X @ Y.T).T
    return ReadoutModel(w_out=w, beta=float(beta))


def predict(model: ReadoutModel, inputs: np.ndarray, states) -> np.ndarray:
    """Apply y_n = W_out [1; u_n; x_n]; returns (steps, n_outputs)."""
    X = assemble_state_matrix(inputs, states)
    if X.shape[0] != model.w_out.shape[1]:
        raise ValueError(
            f"model expects {model.w_out.shape[1]} stacked features, got {X.shape[0]}")
    return (model.w_out @ X).T


def save_readout(model: ReadoutModel, path) -> None:
    """Textual dump: tag line, shape and beta headers, then one row per line."""
    w = model.w_out
    lines = [f"# {_FORMAT_TAG}",
             f"# shape {w.shape[0]} {w.shape[1]}",
             f"# beta {model.beta!r}"]
    for row in w:
        lines.append(" ".join(repr(v) for v in row))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def load_readout(path) -> ReadoutModel:
    with open(path, encoding="ascii") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or lines[0] != f"# {_FORMAT_TAG}":
        raise ValueError(f"not a {_FORMAT_TAG} file: {path}")
    shape = tuple(int(tok) for tok in lines[1].split()[2:4])
    beta = float(lines[2].split()[2])
    w = np.array([[float(tok) for tok in ln.split()] for ln in lines[3:]])
    if w.shape != shape:
        raise ValueError(f"shape header {shape} does not match data {w.shape}")
    return ReadoutModel(w_out=w, beta=beta)
