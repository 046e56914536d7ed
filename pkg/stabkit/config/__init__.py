"""Default configuration for stabkit."""
