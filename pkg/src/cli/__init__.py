"""
Command-line front end: parameter parsing, experiment specs, presets and CSV
reports. Entry point: ``python -m src.cli.main``.
"""
from __future__ import annotations
