"""Build script.

The compiled kernel (_ckernel) is optional: if Cython or a C compiler is
missing, or FLOWLOOP_NO_EXT is set, the package installs pure-Python and
flowloop._kernel falls back automatically.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("FLOWLOOP_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/flowloop/_ckernel.pyx"], language_level=3
        )
    except Exception as exc:  # no cython / no compiler: fall back silently
        print("flowloop: building without compiled kernel (%s)" % exc)
        ext_modules = []

setup(ext_modules=ext_modules)
