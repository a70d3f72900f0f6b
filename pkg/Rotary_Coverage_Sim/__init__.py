"""
Rotary Coverage Simulator

Deterministic simulation of distributed rotary coverage control: N agents on a
ring balance the workloads of angular sectors around shared reference points
and drive themselves to the optimal point of their own sector.
"""

__version__ = "0.1.0"
