"""Shared fixtures: every test starts from a clean environment-free config."""
import pytest

from config_loader import reset_config


@pytest.fixture(autouse=True)
def clean_config():
    config = reset_config(environ={})
    yield config
    reset_config(environ={})
