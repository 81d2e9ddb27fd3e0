import os

from setuptools import setup

ext_modules = []
if not os.environ.get("ABCSCAN_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "abcscan._ckernels",
                    ["src/abcscan/_ckernels.pyx"],
                    include_dirs=["src/abcscan"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
