"""Build script: compiles the generation-step kernel when a toolchain is present.

The package works without the extension (a pure numpy engine is selected at
import time), so any build failure here downgrades to a warning instead of
aborting the install.
"""

import warnings
from os.path import exists, join

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, headers, ...
            warnings.warn(f"building the compiled kernel failed ({exc}); "
                          "falling back to the pure numpy engine")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"building {ext.name} failed ({exc}); "
                          "falling back to the pure numpy engine")


def extensions():
    if not exists("src/pivotalga/_kernel.pyx"):
        return []
    import numpy as np
    from Cython.Build import cythonize

    kernel = Extension(
        "pivotalga._kernel",
        ["src/pivotalga/_kernel.pyx"],
        include_dirs=[np.get_include()],
        # random_standard_normal / random_standard_uniform live in npyrandom
        library_dirs=[join(np.get_include(), "..", "..", "random", "lib")],
        libraries=["npyrandom"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([kernel], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
