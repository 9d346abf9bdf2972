import os

import pytest
from hypothesis import settings

from wildmatroid.corpus import corpus

settings.register_profile("default", max_examples=150, deadline=None, derandomize=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CORPUS = corpus()
SMALL = [(name, m) for name, m in CORPUS if m.size <= 6]


@pytest.fixture(scope="session")
def matroid_corpus():
    return CORPUS
