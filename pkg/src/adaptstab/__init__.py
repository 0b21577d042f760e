"""Stabilizer-state complexity toolkit.

Modules:

* :mod:`adaptstab.pauli` — signed Pauli algebra and GF(2) linear algebra
* :mod:`adaptstab.tableau` — stabilizer tableaux, Clifford gates, measurement
* :mod:`adaptstab.densesim` — exact statevector reference for small n
* :mod:`adaptstab.circuit` — adaptive-circuit IR, validation, lightcones
* :mod:`adaptstab.metrics` — weight, correlation, anti-shallowness metrics
* :mod:`adaptstab.bounds` — time-space trade-off bound checks
* :mod:`adaptstab.prep` — measurement-based preparation compiler
* :mod:`adaptstab.cli` — command-line interface
"""

__version__ = "0.1.0"
