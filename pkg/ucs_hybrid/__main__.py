"""
UCS Hybrid Toolkit

This module allows running the toolkit as a package:
    python -m ucs_hybrid <command> [options]
"""
import sys

from ucs_hybrid.main import main

if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("Interrupted")
        sys.exit(130)
