"""
Main source code package for dicke-gmc.
Genuine multipartite correlations, weaving and superradiant dynamics for Dicke
states and incoherent Dicke mixtures. Entropies are in nats throughout.
"""
__version__ = "0.1.0"
