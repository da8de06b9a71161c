import sys

from santalo.cli.main import main

sys.exit(main())
