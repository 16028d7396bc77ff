"""Main entry point for the shotscore package."""

from shotscore.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
