"""Von Neumann regularity of cellular automata: elementary, finite and linear."""

__version__ = "0.1.0"
