import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "reservoirlab._kernels._core",
                ["src/reservoirlab/_kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                # fp-contract off keeps the compiled kernels bit-identical
                # to the pure-Python fallback
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
