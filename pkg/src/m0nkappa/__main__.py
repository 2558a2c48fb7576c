"""Run the command-line driver with ``python -m m0nkappa``."""

from m0nkappa.cli import main

main()
