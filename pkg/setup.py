"""Build hook for the optional compiled reduction kernel.

The package is fully functional without it (a pure-Python kernel is
selected at import time), so a failed compilation only costs speed."""

import sys

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("cfr._corefast", ["src/cfr/_corefast.pyx"])],
        language_level=3,
    )
except Exception as exc:  # noqa: BLE001 - degrade to the pure-Python kernel
    print(f"warning: compiled kernel skipped ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
