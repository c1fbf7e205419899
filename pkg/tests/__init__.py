"""kanrew test suite."""
