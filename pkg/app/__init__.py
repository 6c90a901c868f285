"""
Main application package
Contains the FastAPI app and the sampling modules
"""

# Core application
from .app import app

# Configuration
from .config import my_settings

# Utilities
from .utils import my_logger

__all__ = [
    # Core application
    "app",

    # Configuration
    "my_settings",

    # Utilities
    "my_logger",
]
