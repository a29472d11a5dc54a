"""Schensted row insertion on random Poissonized Young tableaux.

Combinatorial core (diagrams, transition measures, RSK), closed-form limit
measures, reproducible samplers, and a Monte Carlo harness with a CLI
(``tableaux-lab``) for the insertion-fluctuation experiments.
"""

__version__ = "0.1.0"
