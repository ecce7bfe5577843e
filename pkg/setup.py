import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("ASAW_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "asaw._fast",
                    ["src/asaw/_fast.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # Pure-python fallback kernels are picked up at import time.
        ext_modules = []

setup(ext_modules=ext_modules)
