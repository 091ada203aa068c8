# scripts/run_audit.py
"""Script to run an audit campaign from a checkout without installing the package."""

import sys

from qineq_audit.campaign.cli import main

if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
