"""Allow `python -m dynamokit` as an alias for the dynamokit console script."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
