"""twirlplot: figure rendering for twirlkit sweep results."""

from .plots import KINDS, Aggregation, PlotSpec, aggregate, load_rows, render

__all__ = ["KINDS", "Aggregation", "PlotSpec", "aggregate", "load_rows", "render"]

__version__ = "0.1.0"
