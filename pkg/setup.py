"""Build hooks: compile the row-reduction kernel when Cython is available.

The extension is optional; without a compiler the package installs with the
pure-Python kernel selected at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "nliecoh._rref_c",
                ["src/nliecoh/_rref_c.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
