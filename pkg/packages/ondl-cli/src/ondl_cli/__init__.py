"""ondl command line: experiment pipelines over the ondl engine."""

__version__ = "0.1.0"
