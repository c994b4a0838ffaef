"""Builds the optional compiled kernel; the package works without it."""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SPINLAB_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "spinlab._ckernels",
                    ["src/spinlab/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                    libraries=["m"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
