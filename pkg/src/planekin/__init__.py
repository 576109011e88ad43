"""Plane kinematics and plane differential geometry on complex-valued curves."""
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
