"""Build script: compiles the optional Cython core.

The package is fully functional without the extension (a NumPy fallback is
selected at import time), so a failed extension build only costs speed.
Set LEVELSCOPE_NO_EXT=1 to skip the extension on purpose.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("LEVELSCOPE_NO_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "levelscope._fockcore",
                    ["src/levelscope/_fockcore.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
