import sys

from radixpi.cli import main

sys.exit(main())
