"""Exact gl(1|1) Gaudin models: Bethe ansatz, transfer matrices, opers and Weyl modules."""

__version__ = "0.1.0"
