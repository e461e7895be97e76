import sys

from digitwitness.cli import main

sys.exit(main())
