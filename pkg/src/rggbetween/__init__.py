"""Betweenness centrality in dense random geometric graphs.

Exact discrete betweenness on sampled soft random geometric graphs, the
closed-form continuum limit for the disk, and a quadrature of the continuum
limit for any convex domain.
"""

__version__ = "0.1.0"
