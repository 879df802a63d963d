"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension (a numpy fallback is
selected at import time); the extension only accelerates the hot kernels.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    # reassociation lets gcc vectorize the reduction loops; division and
    # NaN semantics stay strict (no full -ffast-math), so exact-value
    # guarantees like sum(ones)/N == 1 are preserved
    ext = Extension(
        "wwlab._kernels",
        sources=["src/wwlab/_kernels.pyx"],
        extra_compile_args=[
            "-O3",
            "-fassociative-math",
            "-fno-signed-zeros",
            "-fno-trapping-math",
        ],
        optional=True,
    )
    ext_modules = cythonize([ext], language_level="3")

setup(ext_modules=ext_modules)
