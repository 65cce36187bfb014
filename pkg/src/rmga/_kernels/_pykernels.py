"""Pure-Python evaluation kernels.

The compiled kernels in _ckernels.pyx mirror these functions operation for
operation; any change here must be replicated there, or the two backends
stop being bit-identical (enforced by tests/test_kernels.py).
"""

from __future__ import annotations

import math

BACKEND = "python"

FOXHOLE_A1 = (-32.0, -16.0, 0.0, 16.0, 32.0) * 5
FOXHOLE_A2 = tuple(c for c in (-32.0, -16.0, 0.0, 16.0, 32.0) for _ in range(5))


def eval_f1(x) -> float:
    """Sphere, 3-d."""
    acc = 0.0
    for i in range(3):
        xi = x[i]
        acc += xi * xi
    return acc


def eval_f2(x) -> float:
    """Rosenbrock-type banana, 2-d."""
    t = x[0] * x[0] - x[1]
    u = 1.0 - x[0]
    return 100.0 * (t * t) + u * u


def eval_f3(x) -> float:
    """Step function, 5-d: 30 plus the sum of coordinate floors."""
    acc = 30.0
    for i in range(5):
        acc += math.floor(x[i])
    return acc


def eval_f4_noise_free(x) -> float:
    """Weighted quartic, 30-d, with the noise terms replaced by zero."""
    acc = 0.0
    for i in range(30):
        xi = x[i]
        x2 = xi * xi
        acc += (i + 1) * (x2 * x2)
    return acc


def eval_f4_noisy(x, eta) -> float:
    """Weighted quartic plus one standard-normal draw per summand."""
    acc = 0.0
    for i in range(30):
        xi = x[i]
        x2 = xi * xi
        acc += (i + 1) * (x2 * x2) + eta[i]
    return acc


def eval_f5(x) -> float:
    """Shekel's foxholes, 2-d, 25 wells on a 5x5 grid."""
    acc = 0.0
    x1 = x[0]
    x2 = x[1]
    for j in range(25):
        d1 = x1 - FOXHOLE_A1[j]
        d2 = x2 - FOXHOLE_A2[j]
        s1 = d1 * d1
        p1 = s1 * s1 * s1
        s2 = d2 * d2
        p2 = s2 * s2 * s2
        acc += 1.0 / ((j + 1) + p1 + p2)
    return 1.0 / (0.002 + acc)


def eval_beale(x) -> float:
    """Beale's function, 2-d."""
    x1 = x[0]
    x2 = x[1]
    x2sq = x2 * x2
    x2cu = x2sq * x2
    t1 = 1.5 - x1 + x1 * x2
    t2 = 2.25 - x1 + x1 * x2sq
    t3 = 2.625 - x1 + x1 * x2cu
    return t1 * t1 + t2 * t2 + t3 * t3


def eval_quad(x) -> float:
    """Shifted 2-d paraboloid with minimum at (0, 0.4)."""
    t = x[1] - 0.4
    return x[0] * x[0] + t * t


# Codes shared with the compiled backend; f4 scans score noise-free.
GRID_CODES = {
    "f1": 1,
    "f2": 2,
    "f3": 3,
    "f4": 4,
    "f5": 5,
    "beale": 6,
    "quad": 7,
}

_SCALAR_BY_CODE = {
    1: eval_f1,
    2: eval_f2,
    3: eval_f3,
    4: eval_f4_noise_free,
    5: eval_f5,
    6: eval_beale,
    7: eval_quad,
}


def grid_scan(code: int, axes) -> tuple[tuple[int, ...], float]:
    """Exhaustive scan of the cartesian grid spanned by per-axis coordinates.

    Iterates index tuples in lexicographic order (last axis fastest) and
    keeps the first strict minimum, which makes the argmin the
    lexicographically smallest one. Returns (index tuple, value).
    """
    fn = _SCALAR_BY_CODE[code]
    dim = len(axes)
    counts = [len(a) for a in axes]
    idx = [0] * dim
    x = [float(a[0]) for a in axes]
    best_idx = tuple(idx)
    best_val = fn(tuple(x))
    while True:
        j = dim - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < counts[j]:
                x[j] = float(axes[j][idx[j]])
                break
            idx[j] = 0
            x[j] = float(axes[j][0])
            j -= 1
        if j < 0:
            return best_idx, best_val
        v = fn(tuple(x))
        if v < best_val:
            best_val = v
            best_idx = tuple(idx)
