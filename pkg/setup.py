"""Build script for the optional compiled kernels.

The package is fully functional without the extension: syncoords.kernels
falls back to the pure-Python implementation when the compiled module is
missing (see benchmarks/bench_kernels.py for the speed difference).
"""

from setuptools import setup

try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "syncoords._speedups",
                ["src/syncoords/_speedups.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
