"""Build script for the optional compiled kernels.

The package is fully functional without the extension (mkal.backends falls
back to the numpy implementation at import time), so a failed compile is
not fatal: install with MKAL_NO_EXT=1 to skip the extension entirely.
"""

import os

from setuptools import Extension, setup


def extension_modules():
    if os.environ.get("MKAL_NO_EXT"):
        return []
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "mkal._kernels",
        ["src/mkal/_kernels.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extension_modules())
