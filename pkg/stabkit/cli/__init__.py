"""Command-line interface for stabkit."""
