#!/usr/bin/env python3
"""Main entry point for stabkit."""
import sys
from stabkit.cli.main import main

if __name__ == '__main__':
    sys.exit(main())
