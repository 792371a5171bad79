#!/usr/bin/env python
"""Run the cohenalg command line from a source checkout."""
import os
import sys


def main():
    """Make the checkout importable and hand over to the CLI."""
    sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
    try:
        from cohenalg.cli import main as cli_main
    except ImportError as exc:
        raise ImportError(
            "Couldn't import cohenalg's dependencies. Are pydantic and sympy "
            "installed and available on your PYTHONPATH environment variable? "
            "Did you forget to activate a virtual environment?"
        ) from exc
    return cli_main(sys.argv[1:])


if __name__ == '__main__':
    exit(main())
