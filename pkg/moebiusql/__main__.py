import sys
from moebiusql.cli import main

sys.exit(main())
