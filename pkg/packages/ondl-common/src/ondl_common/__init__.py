"""ondl: shared library for config, logging, errors, models, and file formats."""

__version__ = "0.1.0"
