import os

from setuptools import setup

ext_modules = []
if os.environ.get("POLYSCHED_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/polysched/_kernels.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython at build time: install the pure-Python package only.
        # polysched._backend falls back to the interpreted kernels.
        ext_modules = []

setup(ext_modules=ext_modules)
