"""Quantum SU(2): two-parameter Dirac operators, Berezin transforms and quantum metric distances."""
