from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


class optional_build_ext(build_ext):
    """Build the speedup extension if possible, otherwise install pure Python.

    icbound.kernels falls back to the pure-Python kernels at import time, so a
    failed compile must not abort the install.
    """

    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"warning: building icbound._speedups failed ({exc}); "
                  "falling back to pure-Python kernels")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: {ext.name} not compiled ({exc}); "
                  "falling back to pure-Python kernels")


extensions = [
    Extension(
        "icbound._speedups",
        ["src/icbound/_speedups.pyx"],
        extra_compile_args=["-O2"],
    ),
]

setup(
    ext_modules=cythonize(extensions, language_level="3") if cythonize else [],
    cmdclass={"build_ext": optional_build_ext},
)
