import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from approxclones import _kernels_py as py
from approxclones import kernels

from conftest import profiles

try:
    from approxclones import _ckernels as cy
except ImportError:  # extension not built
    cy = None

needs_cython = pytest.mark.skipif(cy is None, reason="compiled extension not built")


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")
    if cy is not None and os.environ.get("APPROXCLONES_PURE_PYTHON", "") in ("", "0"):
        assert kernels.BACKEND == "cython"


def test_env_var_forces_fallback():
    env = dict(os.environ, APPROXCLONES_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import approxclones; print(approxclones.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def _both(name, *args):
    a, b = getattr(py, name)(*args), getattr(cy, name)(*args)
    return a, b


@needs_cython
@given(profiles(min_m=1, max_m=7))
def test_positions_margins_pair_counts_agree(p):
    R, W = p.rank_array, p.weight_array
    for name in ("positions", "margins"):
        a, b = _both(name, R, W) if name != "positions" else _both(name, R)
        np.testing.assert_array_equal(a, b)
    (na, sa), (nb, sb) = _both("pair_counts", R, W)
    np.testing.assert_array_equal(na, nb)
    np.testing.assert_array_equal(sa, sb)


@needs_cython
@given(profiles(max_m=7), st.data())
def test_first_choice_counts_agree(p, data):
    alive = np.array(data.draw(st.lists(st.booleans(), min_size=p.m, max_size=p.m)), dtype=np.uint8)
    if not alive.any():
        alive[0] = 1
    a, b = _both("first_choice_counts", p.rank_array, p.weight_array, alive)
    np.testing.assert_array_equal(a, b)
    assert a.sum() == p.n
    assert (a[alive == 0] == 0).all()


@needs_cython
@given(profiles(max_m=7))
def test_widest_paths_agree(p):
    from approxclones.core import _margin_values
    a, b = _both("widest_paths", _margin_values(p))
    np.testing.assert_array_equal(a, b)


@needs_cython
def test_perfect_clone_flags_agree():
    rng = np.random.default_rng(3)
    for m, n in ((2, 1), (3, 4), (4, 5), (6, 3)):
        batch = np.argsort(rng.random((500, n, m)), axis=2).astype(np.int8)
        np.testing.assert_array_equal(*_both("perfect_clone_flags", batch))


def test_perfect_clone_flags_small_cases():
    # with three candidates any two rankings share an adjacent pair
    batch = np.array([[[0, 1, 2, 3], [3, 2, 1, 0]],
                      [[0, 1, 2, 3], [2, 3, 0, 1]],
                      [[0, 1, 2, 3], [1, 3, 0, 2]]], dtype=np.int8)
    assert list(py.perfect_clone_flags(batch)) == [True, True, False]
    if cy is not None:
        assert list(cy.perfect_clone_flags(batch)) == [True, True, False]
