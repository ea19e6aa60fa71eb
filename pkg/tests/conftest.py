# tests/conftest.py
import os
import random

import pytest
from hypothesis import settings

# Профиль для property-тестов: детерминированно и без дедлайнов (enumeration is slow on first call)
settings.register_profile("zpm", deadline=None, derandomize=True)
settings.load_profile("zpm")


# --- Пути к тестовым файлам ---
@pytest.fixture(scope="session")
def fixtures_dir():
    """Fixture for the path to the fixtures directory."""
    current_dir = os.path.dirname(os.path.abspath(__file__))  # .../tests
    fixtures = os.path.join(current_dir, "fixtures")
    if not os.path.isdir(fixtures):
        pytest.skip(f"Fixtures directory not found at: {fixtures}")
    return fixtures


@pytest.fixture(scope="session")
def fixture_path(fixtures_dir):
    """Returns a function resolving a fixture file name, skipping if it is missing."""

    def resolve(name: str) -> str:
        path = os.path.join(fixtures_dir, name)
        if not os.path.isfile(path):
            pytest.skip(f"Fixture file not found: {path}")
        return path

    return resolve


@pytest.fixture
def rng():
    """Seeded RNG so sampled instances are reproducible."""
    return random.Random(20240607)
