from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("pfwg._kernels._native", ["src/pfwg/_kernels/_native.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    # No Cython: install pure-Python only; the package falls back at import.
    extensions = []

setup(ext_modules=extensions)
