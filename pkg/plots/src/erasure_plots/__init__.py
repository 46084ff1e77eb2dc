"""Plot scripts for erasure-probability result CSVs."""

from .render import PlotSpec, SchemaError, plot_erasure_panel, plot_pdf_overlay

__all__ = ["PlotSpec", "SchemaError", "plot_erasure_panel", "plot_pdf_overlay"]
