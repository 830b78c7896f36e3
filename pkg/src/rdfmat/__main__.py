import sys

from rdfmat.cli import main

sys.exit(main())
