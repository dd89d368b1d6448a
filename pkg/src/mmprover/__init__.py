"""mmprover: Metamath kernel, proof-step datasets, and guided proof search."""

__version__ = "0.1.0"
