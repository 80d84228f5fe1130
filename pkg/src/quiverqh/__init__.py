"""Exact quantum cohomology presentations of quiver varieties and cluster embeddings."""

__version__ = "0.1.0"
