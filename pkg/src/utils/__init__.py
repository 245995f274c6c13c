"""
Utility Functions Module.

Configuration management and shared helpers.

This module provides:
    - Configuration loading (config.py)
    - Centralized logging setup (logging.py)
    - Configuration validation (validation.py)
    - The error hierarchy (errors.py)
"""
from __future__ import annotations
