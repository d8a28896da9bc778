"""`python -m satmatch` delegates to the command-line interface."""

import sys

from satmatch.cli import main

if __name__ == "__main__":
    sys.exit(main())
