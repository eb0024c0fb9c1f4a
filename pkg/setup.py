"""Build the compiled kernel extension when Cython and a C compiler are
available; the package falls back to the pure-Python kernels otherwise.

    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("tcircle.kernels._fast",
                   ["src/tcircle/kernels/_fast.pyx"],
                   extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
