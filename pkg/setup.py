"""Build script: compiles the scalar special-function kernels to a C extension.

The package works without the extension (a pure-Python twin of the kernels is
selected at import time), so failures here only cost speed.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "morseasian._kernels_c",
                ["src/morseasian/_kernels_c.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
