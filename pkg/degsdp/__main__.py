import sys

from degsdp.cli import main

sys.exit(main())
