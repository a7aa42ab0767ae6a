"""Build script: compiles the optional Cython core.

The package works without the extension (a pure-Python twin is selected at
import time), so any build failure here degrades to the fallback instead of
breaking the install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/qcayley/_core/_ckernels.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"qcayley: skipping compiled core ({exc!r}); pure-Python kernels will be used")

setup(ext_modules=ext_modules)
