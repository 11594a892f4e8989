"""Numpy versions of the compiled kernels in ``_ckernels.pyx``.

Same signatures and in-place semantics; used when the extension is not
built or when ``QWALK_PURE_PYTHON`` is set.
"""

import numpy as np

IMPLEMENTATION = "numpy"


def _block_sums(y, offsets, axis=-1):
    return np.add.reduceat(y, offsets[:-1], axis=axis)


def step(x, out, rev, offsets, weight):
    y = x[rev]
    c = _block_sums(y, offsets) * weight
    out[:] = np.repeat(c, np.diff(offsets)) - y


def adjoint_step(x, out, rev, offsets, weight):
    c = _block_sums(x, offsets) * weight
    out[rev] = np.repeat(c, np.diff(offsets)) - x


def step_batch(xs, out, rev, offsets, weight):
    y = xs[:, rev]
    c = _block_sums(y, offsets) * weight
    out[:] = np.repeat(c, np.diff(offsets), axis=1) - y


def tail_occupancy(xs, offsets, out):
    out[:] = _block_sums(np.abs(xs) ** 2, offsets)
