import os

from setuptools import setup

# The compiled kernels are optional: the package falls back to pure
# Python/numpy implementations when the extension is absent.  Set
# EQPSG_NO_EXT=1 to skip building it.
ext_modules = []
if not os.environ.get("EQPSG_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools.extension import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "eqpsg._speedups",
                    ["src/eqpsg/_speedups.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
