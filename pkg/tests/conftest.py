import pytest

from ptspec.harness.reproduce import SpectrumCache


@pytest.fixture(scope="session")
def cache():
    """Session-wide memo of classified spectra shared across slow tests."""
    return SpectrumCache()
