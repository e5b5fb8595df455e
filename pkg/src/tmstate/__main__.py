import sys

from tmstate.cli import main

sys.exit(main())
