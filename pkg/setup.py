"""Build shim for the optional compiled kernel.

The package is pure Python plus one accelerator module.  If Cython or a C
compiler is unavailable the build falls through to the pure-Python kernels
selected at import time, so the extension is marked optional.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "sumrank._core",
                ["src/sumrank/_core.pyx"],
                optional=True,
            )
        ],
        language_level=3,
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
