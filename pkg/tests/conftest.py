import pytest

from .base import out_clean, out_create


@pytest.hookimpl()
def pytest_sessionstart(session):
    out_create()


@pytest.hookimpl()
def pytest_sessionfinish(session):
    out_clean()
