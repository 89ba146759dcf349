"""
Main entry point for the Eisenstein congruence toolkit.

Examples:
    python main.py predict --p 5 --weight 4 --char trivial
    python main.py verify-main-theorem --p 5 --level 11 --char-order 5 --weights 2,4
"""

import sys
from pathlib import Path

# Add the repository root to the path
sys.path.insert(0, str(Path(__file__).parent))

from src.cli import run


def main():
    """Main entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
