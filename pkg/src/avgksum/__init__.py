"""Average-case k-SUM: solvers, reductions and experiment tooling."""
__version__ = "0.1.0"
