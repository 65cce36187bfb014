# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled evaluation kernels.

Mirrors _pykernels.py operation for operation. The build disables
floating-point contraction, so results are bit-identical to the pure
backend (see tests/test_kernels.py).
"""

from libc.math cimport floor

BACKEND = "compiled"

cdef double[25] _A1
cdef double[25] _A2
cdef int _k
for _k in range(25):
    _A1[_k] = (-32.0, -16.0, 0.0, 16.0, 32.0)[_k % 5]
    _A2[_k] = (-32.0, -16.0, 0.0, 16.0, 32.0)[_k // 5]

FOXHOLE_A1 = tuple(_A1[i] for i in range(25))
FOXHOLE_A2 = tuple(_A2[i] for i in range(25))

GRID_CODES = {
    "f1": 1,
    "f2": 2,
    "f3": 3,
    "f4": 4,
    "f5": 5,
    "beale": 6,
    "quad": 7,
}


cdef double _c_f1(const double* x) noexcept nogil:
    cdef double acc = 0.0
    cdef double xi
    cdef int i
    for i in range(3):
        xi = x[i]
        acc += xi * xi
    return acc


cdef double _c_f2(const double* x) noexcept nogil:
    cdef double t = x[0] * x[0] - x[1]
    cdef double u = 1.0 - x[0]
    return 100.0 * (t * t) + u * u


cdef double _c_f3(const double* x) noexcept nogil:
    cdef double acc = 30.0
    cdef int i
    for i in range(5):
        acc += floor(x[i])
    return acc


cdef double _c_f4_noise_free(const double* x) noexcept nogil:
    cdef double acc = 0.0
    cdef double xi, x2
    cdef int i
    for i in range(30):
        xi = x[i]
        x2 = xi * xi
        acc += (i + 1) * (x2 * x2)
    return acc


cdef double _c_f5(const double* x) noexcept nogil:
    cdef double acc = 0.0
    cdef double x1 = x[0]
    cdef double x2 = x[1]
    cdef double d1, d2, s1, s2, p1, p2
    cdef int j
    for j in range(25):
        d1 = x1 - _A1[j]
        d2 = x2 - _A2[j]
        s1 = d1 * d1
        p1 = s1 * s1 * s1
        s2 = d2 * d2
        p2 = s2 * s2 * s2
        acc += 1.0 / ((j + 1) + p1 + p2)
    return 1.0 / (0.002 + acc)


cdef double _c_beale(const double* x) noexcept nogil:
    cdef double x1 = x[0]
    cdef double x2 = x[1]
    cdef double x2sq = x2 * x2
    cdef double x2cu = x2sq * x2
    cdef double t1 = 1.5 - x1 + x1 * x2
    cdef double t2 = 2.25 - x1 + x1 * x2sq
    cdef double t3 = 2.625 - x1 + x1 * x2cu
    return t1 * t1 + t2 * t2 + t3 * t3


cdef double _c_quad(const double* x) noexcept nogil:
    cdef double t = x[1] - 0.4
    return x[0] * x[0] + t * t


cdef double _c_eval(int code, const double* x) noexcept nogil:
    if code == 1:
        return _c_f1(x)
    elif code == 2:
        return _c_f2(x)
    elif code == 3:
        return _c_f3(x)
    elif code == 4:
        return _c_f4_noise_free(x)
    elif code == 5:
        return _c_f5(x)
    elif code == 6:
        return _c_beale(x)
    return _c_quad(x)


cdef int _load(object x, double* buf, int n) except -1:
    cdef int i
    for i in range(n):
        buf[i] = x[i]
    return 0


def eval_f1(x):
    cdef double buf[3]
    _load(x, buf, 3)
    return _c_f1(buf)


def eval_f2(x):
    cdef double buf[2]
    _load(x, buf, 2)
    return _c_f2(buf)


def eval_f3(x):
    cdef double buf[5]
    _load(x, buf, 5)
    return _c_f3(buf)


def eval_f4_noise_free(x):
    cdef double buf[30]
    _load(x, buf, 30)
    return _c_f4_noise_free(buf)


def eval_f4_noisy(x, eta):
    cdef double buf[30]
    cdef double ebuf[30]
    _load(x, buf, 30)
    _load(eta, ebuf, 30)
    cdef double acc = 0.0
    cdef double xi, x2
    cdef int i
    for i in range(30):
        xi = buf[i]
        x2 = xi * xi
        acc += (i + 1) * (x2 * x2) + ebuf[i]
    return acc


def eval_f5(x):
    cdef double buf[2]
    _load(x, buf, 2)
    return _c_f5(buf)


def eval_beale(x):
    cdef double buf[2]
    _load(x, buf, 2)
    return _c_beale(buf)


def eval_quad(x):
    cdef double buf[2]
    _load(x, buf, 2)
    return _c_quad(buf)


def grid_scan(int code, axes):
    """Same contract and iteration order as the pure-Python grid_scan."""
    cdef int dim = len(axes)
    if dim > 30:
        raise ValueError("grid_scan supports at most 30 axes")
    cdef int counts[30]
    cdef int idx[30]
    cdef int best[30]
    cdef double x[30]
    # Flattened per-axis coordinate storage.
    cdef int total_len = 0
    cdef int offs[31]
    cdef int i, j, k
    for i in range(dim):
        offs[i] = total_len
        total_len += len(axes[i])
    offs[dim] = total_len
    cdef object coord_obj = bytearray(total_len * sizeof(double))
    cdef unsigned char[::1] raw = coord_obj
    cdef double* coords = <double*> &raw[0]
    for i in range(dim):
        counts[i] = offs[i + 1] - offs[i]
        for k in range(counts[i]):
            coords[offs[i] + k] = axes[i][k]
        idx[i] = 0
        x[i] = coords[offs[i]]
    cdef double best_val = _c_eval(code, x)
    for i in range(dim):
        best[i] = 0
    cdef double v
    with nogil:
        while True:
            j = dim - 1
            while j >= 0:
                idx[j] += 1
                if idx[j] < counts[j]:
                    x[j] = coords[offs[j] + idx[j]]
                    break
                idx[j] = 0
                x[j] = coords[offs[j]]
                j -= 1
            if j < 0:
                break
            v = _c_eval(code, x)
            if v < best_val:
                best_val = v
                for i in range(dim):
                    best[i] = idx[i]
    return tuple(best[i] for i in range(dim)), best_val
