import sys

from spinsq.cli import main

sys.exit(main())
