import sys

from adaptive_cholesky_gp.cli.app import main

sys.exit(main())
