"""Build the optional Cython kernel.

The pure-Python kernel in ``stratamalg._kernels_py`` is always importable; a
failed compile only costs speed, so the extension is marked optional.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("STRATAMALG_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "stratamalg._kernels",
                    ["src/stratamalg/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )

setup(ext_modules=ext_modules)
