import os
import subprocess
import sys

import numpy as np
import pytest

from conftest import shipped_models
from fourierpdf import BACKEND, build_model
from fourierpdf import _kernels_py as py

compiled = pytest.importorskip("fourierpdf._kernels", reason="compiled extension not built")


def _ids(cfg):
    return f"{cfg[0]}-{cfg[1]}"


@pytest.mark.parametrize("cfg", shipped_models(), ids=_ids)
def test_series_parity(cfg):
    model = build_model(*cfg)
    x = np.linspace(-model.A - 0.5, model.A + 0.5, 5001)
    assert np.max(np.abs(compiled.pdf_series(x, model.a, model.A) - py.pdf_series(x, model.a, model.A))) <= 1e-13
    assert np.max(np.abs(compiled.cdf_series(x, model.b, model.A) - py.cdf_series(x, model.b, model.A))) <= 1e-13


@pytest.mark.parametrize("cfg", shipped_models(), ids=_ids)
def test_quantile_parity(cfg):
    model = build_model(*cfg)
    for alpha in (0.001, 0.1, 0.5, 0.9, 0.975, 0.999):
        xc, _ = compiled.solve_quantile(model.a, model.b, model.A, alpha)
        xp, _ = py.solve_quantile(model.a, model.b, model.A, alpha)
        assert abs(xc - xp) <= 1e-10


def test_shapes_and_endpoints():
    model = build_model("uniform-sum", 4)
    x = np.array([[-2.0, 0.0], [2.0, 3.0]])
    for k in (compiled, py):
        assert k.pdf_series(x, model.a, model.A).shape == (2, 2)
        assert k.cdf_series(x, model.b, model.A).tolist() == [[0.0, 0.5], [1.0, 1.0]]


def test_default_backend_is_compiled():
    assert BACKEND == "cython"


def test_environment_forces_fallback():
    env = dict(os.environ, FOURIERPDF_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import fourierpdf; print(fourierpdf.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
