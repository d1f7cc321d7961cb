"""Build hook: compile the speedup extension when Cython is available.

The package is fully functional without it; immaculate._kernels falls back to
the pure-Python twin whenever the extension failed to build or import.
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
                "immaculate._kernels._speedups",
                ["src/immaculate/_kernels/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
