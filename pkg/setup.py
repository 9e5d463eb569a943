"""Build script: compiles the optional DP kernel extension.

The package is fully functional without the extension (a NumPy fallback is
selected at import time), so a failed Cython build only costs speed.

    python setup.py build_ext --inplace
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/champbribe/_dpkernel.pyx",
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
