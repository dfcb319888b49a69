"""Builds the optional compiled scoring kernels.

The package works without the extension: qlbn.kernels falls back to a NumPy
implementation at import time. Building the extension only makes the
interference/phase-sweep kernels faster.
"""
import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Skip the extension instead of failing the install on broken toolchains."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler, missing headers, ...
            print(f"qlbn: skipping compiled kernels ({exc}); using NumPy fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"qlbn: failed to build {ext.name} ({exc}); using NumPy fallback")


ext_modules = []
if os.environ.get("QLBN_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("qlbn._kernels", ["src/qlbn/_kernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
