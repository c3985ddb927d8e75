"""Signed, encrypted command messages between two peers over UDP."""
from .errors import NcshError

__version__ = "0.1.0"
__all__ = ["NcshError", "__version__"]
