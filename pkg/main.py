"""symframe - self-stress analysis of symmetric bar-joint frameworks."""

import sys

from symframe.cli import main

if __name__ == "__main__":
    sys.exit(main())
