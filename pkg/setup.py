"""Build script: compiles the optional Cython kernel when Cython is available.

The package is fully functional without the extension; relpos.kernel falls
back to the pure-Python twin at import time.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/relpos/_gaussint_c.pyx"],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
