"""Entry point for ``python -m even_derangement``."""

import sys

from .cli import main

sys.exit(main())
