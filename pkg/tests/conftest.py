import os

import pytest

from quiverqh.quiver import load_quiver

QUIVER_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "quivers")


def quiver_path(name: str) -> str:
    return os.path.join(QUIVER_DIR, f"{name}.json")


@pytest.fixture(scope="session")
def quivers():
    """Lazy loader for the bundled quiver fixtures."""
    cache = {}

    def load(name: str):
        if name not in cache:
            cache[name] = load_quiver(quiver_path(name))
        return cache[name]

    load.path = quiver_path
    return load
