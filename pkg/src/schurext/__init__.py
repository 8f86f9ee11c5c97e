"""Exact Ext-group engine for strict polynomial functors over prime fields."""

__version__ = "0.1.0"
