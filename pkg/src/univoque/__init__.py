"""Unique q-expansions: quasi-greedy expansions, lexicographic subshifts,
entropy plateaus, the bifurcation set, and fractal dimensions of the
univoque set, all in exact arithmetic."""

__version__ = "0.1.0"
