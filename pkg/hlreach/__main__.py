import sys

from hlreach.cli import main

sys.exit(main())
