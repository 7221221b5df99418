"""Orlik-Solomon ideals of simple matroids, their annihilators and presentations."""

from .exterior import ExtElement, boundary, e, is_pure, render, wedge
from .kernels import BACKEND, available_backends, use_backend
from .matroid import Flag, Matroid, MatroidError

__version__ = "0.1.0"

__all__ = [
    "ExtElement", "boundary", "e", "is_pure", "render", "wedge",
    "BACKEND", "available_backends", "use_backend",
    "Flag", "Matroid", "MatroidError",
]
