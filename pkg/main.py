"""
main.py
--------
CongruenceLab: Ramanujan-type congruences of modular forms

Runs the command line:
  1. Loads lab settings (cache directory, certificate store, log level)
  2. Dispatches the subcommand (gen, scan, certify-table, certify, rep,
     partition, theta-lab, validate)
  3. Exits with the command's status code
"""

import sys

from ui.cli import run


def main() -> None:
    """Main entry point for CongruenceLab."""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
