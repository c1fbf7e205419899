"""Test configuration and fixtures for pytest."""

from __future__ import annotations

import os
import random
from collections.abc import Iterator
from pathlib import Path as FilePath
from unittest.mock import patch

import pytest

from kanrew.config import get_settings
from kanrew.core import OrderConfig, complete, initial_rules
from kanrew.models import KanPresentation, Path, RewriteSystem, Term
from kanrew.schemas import parse_presentation

DATA = FilePath(__file__).parent / "data"

FINITE_EXAMPLES = ["swap.kan", "orbit.kan", "coset.kan"]
ALL_EXAMPLES = ["example4.kan", "swap.kan", "monoid.kan", "orbit.kan", "coset.kan"]


def load(name: str) -> KanPresentation:
    """Parse one of the documents under tests/data."""
    return parse_presentation((DATA / name).read_text(encoding="utf-8"))


def completed(presentation: KanPresentation) -> RewriteSystem:
    """Complete with default ordering; fails the test if completion stops early."""
    order = OrderConfig.for_presentation(presentation)
    result = complete(initial_rules(presentation, order), order)
    assert result.completed
    return result.system


@pytest.fixture(autouse=True)
def _fresh_settings() -> Iterator[None]:
    """Isolate tests from the host environment and the settings cache."""
    with patch.dict(os.environ, {}, clear=False):
        for key in [k for k in os.environ if k.startswith("KANREW_")]:
            del os.environ[key]
        get_settings.cache_clear()
        yield
    get_settings.cache_clear()


@pytest.fixture
def data_dir() -> FilePath:
    return DATA


@pytest.fixture
def example4() -> KanPresentation:
    """The two-object worked example with an infinite answer."""
    return load("example4.kan")


@pytest.fixture
def example4_order(example4: KanPresentation) -> OrderConfig:
    return OrderConfig.for_presentation(example4)


@pytest.fixture
def example4_complete(example4: KanPresentation) -> RewriteSystem:
    return completed(example4)


@pytest.fixture
def swap() -> KanPresentation:
    """One element, one loop b with b.b = id: exactly two normal forms."""
    return load("swap.kan")


@pytest.fixture
def monoid() -> KanPresentation:
    """The free commutative monoid on a, b acting on a single point."""
    return load("monoid.kan")


@pytest.fixture
def orbit() -> KanPresentation:
    """A 3-cycle of elements along a loop of order 3."""
    return load("orbit.kan")


@pytest.fixture
def coset() -> KanPresentation:
    """Cyclic group of order 6 on the cosets of its subgroup of order 3."""
    return load("coset.kan")


@pytest.fixture
def empty() -> KanPresentation:
    return load("empty.kan")


def random_path(presentation: KanPresentation, rng: random.Random, base: str, length: int) -> Path:
    """A random walk of at most ``length`` arrows from ``base``; stops early at sinks."""
    path = presentation.delta.identity(base)
    for _ in range(length):
        choices = presentation.delta.outgoing(path.target)
        if not choices:
            break
        arrow = rng.choice(choices)
        path = path.extend(arrow.name, arrow.target)
    return path


def random_term(presentation: KanPresentation, rng: random.Random, max_length: int) -> Term:
    x = rng.choice(presentation.elements)
    return Term(x, random_path(presentation, rng, presentation.anchor(x), rng.randint(0, max_length)))
