"""Exact computations with Drinfeld quasi-modular forms over F_q(T)."""
