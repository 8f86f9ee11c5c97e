import pytest

from schurext import cache as cache_mod


@pytest.fixture(autouse=True, scope="session")
def _isolated_default_cache(tmp_path_factory):
    """Point the default cache at a throwaway directory so tests never read
    or pollute the user's cache."""
    import os

    os.environ[cache_mod.ENV_VAR] = str(tmp_path_factory.mktemp("defcache"))


@pytest.fixture(scope="session")
def shared_cache(tmp_path_factory):
    """One resolution cache for the whole run, so checks that resolve the
    same module (theorem suite vs acceptance suite) pay for it once."""
    return cache_mod.ResolutionCache(tmp_path_factory.mktemp("rescache"))
