import sys

from jordanlens.cli import main

sys.exit(main())
