"""
Module entry point: python -m matroid_selection <subcommand> ...
"""
import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
