import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # fall back to the pure-Python walker
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("PERMSEQ_NO_EXT"):
    ext_modules = cythonize(
        [Extension("permseq._ckernel", ["src/permseq/_ckernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
