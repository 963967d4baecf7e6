import numpy as np
import pytest

from bfstab.depth import make_depth_context

DEPTHS = [0.5, 1.0, 1.5, 2.0, 3.0]


@pytest.fixture(params=DEPTHS, ids=lambda h: f"h={h}")
def ctx(request):
    return make_depth_context(request.param)


def rel(a, b) -> float:
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    scale = np.maximum(np.abs(a), np.abs(b))
    scale = np.where(scale == 0.0, 1.0, scale)
    return float(np.max(np.abs(a - b) / scale))
