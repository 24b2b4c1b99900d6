import sys

from sgroups.cli.main import main

sys.exit(main())
