"""Reservoir-computing laboratory.

One reservoir abstraction (reset / step / observe) over seven back-ends:
a classical echo-state network, two simulated physical reservoirs
(acoustic bubble cluster, tapered whisker spring chain) and three quantum
reservoirs (spin network, Kerr oscillators, measurement-controlled
cavity), sharing a ridge-regression readout and a config-driven
experiment harness.
"""

from ._kernels import get_backend

__version__ = "0.1.0"

__all__ = ["get_backend", "__version__"]
