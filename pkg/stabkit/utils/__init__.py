"""Configuration, file I/O and document decoding for stabkit."""
