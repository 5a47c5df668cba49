import sys

from sliced_wasserstein_filter.app import main

sys.exit(main())
