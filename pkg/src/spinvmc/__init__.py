"""Variational Monte Carlo for spin lattices.

Trial states: Jastrow pair products, restricted Boltzmann machines,
entangled plaquette states, (diagonal and general) string-bond states,
the lattice Laughlin state and products thereof.  Optimization is
stochastic reconfiguration; validation is exact diagonalization at desk
scale.
"""

__version__ = "0.1.0"
