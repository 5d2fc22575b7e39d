#!/usr/bin/env python3
"""
UCP SVR Estimator
Sizes projects in use case points and estimates effort with support vector regression
"""

import sys
from pathlib import Path

# Ensure we can find our modules when installed
if __name__ == '__main__':
    script_dir = Path(__file__).parent.absolute()
    if str(script_dir) not in sys.path:
        sys.path.insert(0, str(script_dir))

from src.application import run


def main():
    """Main entry point for the application."""
    return run(sys.argv[1:])


if __name__ == '__main__':
    sys.exit(main())
