"""Build script.

The package works without the compiled extension (a pure-Python fallback is
selected at import time), so the Cython build is best-effort: set
BETALAC_NO_EXTENSION=1 to skip it explicitly.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("BETALAC_NO_EXTENSION") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "betalac._fastkernels",
                    ["src/betalac/_fastkernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
