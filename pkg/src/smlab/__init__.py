"""Submodule-lattice properties over finite rings and over the integers."""

__version__ = "0.1.0"
