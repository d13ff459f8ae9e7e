"""The compiled kernel and the NumPy fallback must be interchangeable."""

import math
import os
import subprocess
import sys

import numpy as np
import pytest
from scipy.special import gammaln

from levelscope._backend import available_backends


def _block(impl, b, kt, n_stop):
    g = 2.0 * kt / (1.0 + 2.0 * kt)
    z = 1.0 / (1.0 + 2.0 * kt)
    lf = gammaln(np.arange(1.0, n_stop + 2.0))
    out = np.empty(n_stop)
    impl.fock_weight_block(b, math.log(g), math.log(z), lf, 0, n_stop, out)
    return out


@pytest.mark.parametrize("b", [0, 1, 3, 7, 15])
@pytest.mark.parametrize("kt", [1e-3, 0.3, 2.0, 40.0])
def test_backends_agree(b, kt):
    backends = available_backends()
    if "compiled" not in backends:
        pytest.skip("compiled extension not built")
    n_stop = 400
    ref = _block(backends["python"], b, kt, n_stop)
    fast = _block(backends["compiled"], b, kt, n_stop)
    # exp() differs by an ulp or two between libm and NumPy's vector path.
    np.testing.assert_allclose(fast, ref, rtol=1e-12, atol=1e-300)


def test_python_block_values_are_finite_and_nonnegative():
    out = _block(available_backends()["python"], 5, 1.0, 200)
    assert np.all(out >= 0.0)
    assert np.all(np.isfinite(out))


def test_env_var_forces_python_backend():
    env = dict(os.environ, LEVELSCOPE_BACKEND="python")
    code = "import levelscope; print(levelscope.BACKEND)"
    got = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    assert got.stdout.strip() == "python"


def test_env_var_rejects_unknown_backend():
    env = dict(os.environ, LEVELSCOPE_BACKEND="fortran")
    code = "import levelscope"
    got = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert got.returncode != 0
