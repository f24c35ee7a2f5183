"""Shared fixtures."""

from __future__ import annotations

from pathlib import Path

import pytest

from adplanner import WebsiteNetwork, parse_network_file

from .helpers import ABC_PATH


@pytest.fixture(scope="session")
def abc_path() -> Path:
    return ABC_PATH


@pytest.fixture()
def abc_network() -> WebsiteNetwork:
    return parse_network_file(ABC_PATH.read_bytes())
