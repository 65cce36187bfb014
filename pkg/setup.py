"""Build the optional compiled kernels.

The package works without the extension (a pure-Python fallback is selected
at import time), so a missing compiler only costs speed.

-ffp-contract=off keeps the C arithmetic bit-identical to the pure-Python
kernels: fused multiply-adds would otherwise round differently.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "rmga._kernels._ckernels",
                ["src/rmga/_kernels/_ckernels.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
