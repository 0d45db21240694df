import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from genwait import _kernels_py, kernels
from genwait.montecarlo import CounterRNG, sample_tau
from genwait.named import parse_group

try:
    from genwait import _kernels as compiled
except ImportError:  # extension not built
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled extension not built")

GROUPS = ["C(2)", "S(3)", "C(2)xC(2)xC(2)", "S(4)", "Q8", "A(5)"]


def test_mix64_reference_values():
    # splitmix64 outputs for state increments of the golden gamma from 0
    assert _kernels_py.mix64(0x9E3779B97F4A7C15) == 0xE220A8397B1DCDAF
    assert _kernels_py.mix64(2 * 0x9E3779B97F4A7C15) == 0x6E789E6AA1B965F4


@needs_compiled
@pytest.mark.parametrize("spec", GROUPS)
def test_closure_backends_agree(spec):
    G = parse_group(spec)
    rng = np.random.default_rng(0)
    for _ in range(20):
        gens = rng.integers(0, G.order, size=rng.integers(1, 3)).astype(np.int32)
        assert compiled.closure(G.table, 1, gens) == _kernels_py.closure(G.table, 1, gens)


@needs_compiled
@pytest.mark.parametrize("spec", GROUPS)
def test_sampler_backends_agree(spec):
    G = parse_group(spec)
    a = compiled.sample_tau_batch(G.table, 300, 99)
    b = _kernels_py.sample_tau_batch(G.table, 300, 99)
    assert np.array_equal(a, b)


@given(st.integers(0, 2 ** 64 - 1), st.integers(0, 50))
def test_sampler_matches_reference_stream(seed, trial):
    G = parse_group("S(3)")
    batch = kernels.sample_tau_batch(G.table, 1, seed, trial)
    assert int(batch[0]) == sample_tau(G, CounterRNG(seed, trial))


def test_batching_does_not_change_results():
    G = parse_group("S(4)")
    whole = kernels.sample_tau_batch(G.table, 1000, 7)
    parts = np.concatenate([kernels.sample_tau_batch(G.table, 300, 7, s) for s in (0, 300, 600)]
                           + [kernels.sample_tau_batch(G.table, 100, 7, 900)])
    assert np.array_equal(whole, parts)


def test_pure_python_selected_by_environment():
    env = dict(os.environ, GENWAIT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from genwait import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_closure_includes_seed_and_identity():
    G = parse_group("S(4)")
    m = kernels.closure(G.table, 1 << 5, np.array([], dtype=np.int32))
    assert m == (1 << 5) | 1
