"""Shared reservoir interface: reset / step / observe."""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np


class Reservoir(ABC):
    """A fixed dynamical system driven by an input sequence.

    Implementations own mutable internal state (single-owner; distinct
    instances may run in parallel).  ``step`` advances the dynamics by one
    input sample, ``observe`` returns the current feature vector.
    """

    #: number of entries in the feature vector returned by observe()
    feature_width: int

    #: required input interval as (low, high), or None if unconstrained.
    #: The harness rescales task inputs into this interval.
    input_domain: tuple[float, float] | None = None

    @abstractmethod
    def reset(self) -> None:
        """Return the reservoir to its initial state."""

    @abstractmethod
    def step(self, u) -> None:
        """Advance the dynamics by one input sample ``u`` (scalar or 1-d)."""

    @abstractmethod
    def observe(self) -> np.ndarray:
        """Current feature vector (length ``feature_width``)."""

    def run(self, values: np.ndarray) -> np.ndarray:
        """Drive the reservoir with ``values`` (steps x channels).

        Returns the feature matrix, one row per input step.
        """
        values = np.asarray(values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        out = np.empty((values.shape[0], self.feature_width))
        for n in range(values.shape[0]):
            self.step(values[n])
            out[n] = self.observe()
        return out
