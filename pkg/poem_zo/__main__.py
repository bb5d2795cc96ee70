#!/usr/bin/env python3
"""
Точка входа стенда экспериментов.

Запуск:
    python -m poem_zo {run,sweep,stepsize-trace,download-hint} ...
"""

import sys

from poem_zo.bench.cli import main

if __name__ == "__main__":
    sys.exit(main())
