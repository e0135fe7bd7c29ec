import subprocess
import sys

import numpy as np
import pytest

from bzinfo import _kernels


def random_stack(k, d, rng):
    g = rng.standard_normal((k, d, d)) + 1j * rng.standard_normal((k, d, d))
    return np.ascontiguousarray((g + g.conj().transpose(0, 2, 1)) / 2)


def test_backend_selected():
    assert _kernels.BACKEND in ("numba", "numpy")


@pytest.mark.skipif(_kernels.nb_real_trace_batch is None, reason="numba lane unavailable")
def test_trace_lanes_agree(rng):
    for d in (2, 3, 8):
        ops = random_stack(10, d, rng)
        rho = random_stack(1, d, rng)[0]
        a = _kernels.np_real_trace_batch(ops, rho)
        b = _kernels.nb_real_trace_batch(ops, rho)
        np.testing.assert_allclose(a, b, atol=1e-12)


@pytest.mark.skipif(_kernels.nb_tally_inverse_cdf is None, reason="numba lane unavailable")
def test_tally_lanes_identical(rng):
    cumulative = np.array([0.1, 0.4, 0.75, 1.0])
    uniforms = rng.random(20000)
    # include boundary values, which must bin identically in both lanes
    uniforms = np.concatenate([uniforms, cumulative, [0.0, np.nextafter(1.0, 0.0)]])
    a = _kernels.np_tally_inverse_cdf(cumulative, uniforms)
    b = _kernels.nb_tally_inverse_cdf(cumulative, uniforms)
    np.testing.assert_array_equal(a, b)
    assert int(a.sum()) == uniforms.size


def test_tally_single_outcome():
    counts = _kernels.tally_inverse_cdf(np.array([1.0]), np.array([0.0, 0.5, 0.999]))
    np.testing.assert_array_equal(counts, [3])


def test_env_flag_forces_numpy_lane():
    code = (
        "import os; os.environ['BZINFO_DISABLE_NUMBA'] = '1'; "
        "from bzinfo import _kernels; print(_kernels.BACKEND)"
    )
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == "numpy"


def test_results_identical_across_lanes_in_sampler():
    # same seed, same uniforms: the tally must not depend on the lane
    code = (
        "import os; os.environ['BZINFO_DISABLE_NUMBA'] = '1'; "
        "from bzinfo import build_mub, random_density, sample_outcomes; "
        "t = sample_outcomes(build_mub(3), random_density(3, 3, 5), 2000, seed=9); "
        "print([row.tolist() for row in t.counts])"
    )
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, check=True
    )
    from bzinfo import build_mub, random_density, sample_outcomes

    table = sample_outcomes(build_mub(3), random_density(3, 3, 5), 2000, seed=9)
    assert out.stdout.strip() == str([row.tolist() for row in table.counts])
