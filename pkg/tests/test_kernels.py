import random
from itertools import combinations

import pytest

from wildmatroid import _kernels_py, kernels

try:
    from wildmatroid import _kernels as compiled
except ImportError:  # pragma: no cover
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


def bases(r, n):
    return [sum(1 << i for i in c) for c in combinations(range(n), r)]


def test_backend_is_reported():
    assert kernels.BACKEND in ("python", "cython")


def test_fallback_down_closure_and_extremes():
    table = _kernels_py.down_closure(4, bases(2, 4))
    assert sum(table) == 1 + 4 + 6
    assert sorted(_kernels_py.minimal_absent(4, table)) == sorted(bases(3, 4))
    assert sorted(_kernels_py.maximal_present(4, table)) == sorted(bases(2, 4))


@needs_compiled
@pytest.mark.parametrize("seed", range(10))
def test_backends_agree(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 10)
    masks = rng.sample(range(1 << n), rng.randint(1, min(20, 1 << n)))
    t1, t2 = _kernels_py.down_closure(n, masks), compiled.down_closure(n, masks)
    assert bytes(t1) == bytes(t2)
    assert sorted(_kernels_py.minimal_absent(n, t1)) == sorted(compiled.minimal_absent(n, t2))
    assert sorted(_kernels_py.maximal_present(n, t1)) == sorted(compiled.maximal_present(n, t2))
    assert sorted(_kernels_py.pairwise_or(masks, masks)) == sorted(compiled.pairwise_or(masks, masks))
    a, b = sorted(masks), sorted(rng.sample(range(1 << n), len(masks)))
    assert _kernels_py.max_common(a, b) == compiled.max_common(a, b)


def test_fallback_can_be_forced():
    import os
    import subprocess
    import sys

    code = ("from wildmatroid import kernels; from wildmatroid.core import FiniteMatroid; "
            "from wildmatroid.ops import plus; "
            "assert plus(FiniteMatroid.uniform(2, 4)) == FiniteMatroid.uniform(3, 4); print(kernels.BACKEND)")
    env = {**os.environ, "WILDMATROID_PURE": "1"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
