import pytest

from zetatails import PrecisionContext
from zetatails.mzv import ensure_named_constants


@pytest.fixture(scope="session")
def ctx():
    """One shared context so constant caches persist across tests."""
    c = PrecisionContext()
    ensure_named_constants(c)
    return c
