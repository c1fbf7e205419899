"""Entry point for running kanrew via python -m kanrew."""

from kanrew.cli import run

if __name__ == "__main__":
    run()
