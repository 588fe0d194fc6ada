import os

from setuptools import setup

ext_modules = []
if os.environ.get("SUQDIRAC_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("suqdirac._ckernels", ["src/suqdirac/_ckernels.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3", "boundscheck": False,
                                 "wraparound": False, "cdivision": True},
        )
    except ImportError:
        # no Cython: the pure-Python kernels are used at import time
        ext_modules = []

setup(ext_modules=ext_modules)
