"""Build script: compiles the optional speedup extension when a toolchain exists.

The package is fully functional without the extension (a NumPy fallback is
selected at import time), so any compiler or Cython failure downgrades the
install instead of breaking it.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn(f"speedup extension skipped: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"speedup extension skipped: {exc}")


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError as exc:
        warnings.warn(f"speedup extension skipped: {exc}")
        return []
    ext = Extension(
        "moesearch._speedups",
        ["src/moesearch/_speedups.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
