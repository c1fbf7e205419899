"""kanrew - completing rewrite systems for Kan extensions of actions."""

try:
    from importlib.metadata import version

    __version__ = version("kanrew")
except Exception:
    __version__ = "0.1.0"

from kanrew.core import complete, initial_rules, tabulate
from kanrew.schemas import parse_presentation

__all__ = ["__version__", "complete", "initial_rules", "parse_presentation", "tabulate"]
