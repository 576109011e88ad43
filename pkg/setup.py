"""Build hook for the optional compiled kernels.

The package works without a compiler: when Cython or a C toolchain is missing
the extension is skipped and ``planekin.kernels`` falls back to pure Python.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("PLANEKIN_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "planekin._kernels",
                    ["src/planekin/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
