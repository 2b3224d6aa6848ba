"""ondl engine: online NMF, Markov data sources, motif chains and network learning."""

__version__ = "0.1.0"
