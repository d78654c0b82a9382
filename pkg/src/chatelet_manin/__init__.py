"""Rational points of bounded height on split Chatelet surfaces."""

__version__ = "0.1.0"

from .surface import SurfaceSpec, validate  # noqa: E402,F401
