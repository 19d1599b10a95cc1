"""Build script: compiles the optional fast kernel when Cython is available.

The package is fully functional without the extension (nilqp.kernel falls
back to the pure-Python implementation), so the build never fails hard on a
missing compiler or missing Cython.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/nilqp/_fastkernel.pyx"],
        compiler_directives={"language_level": "3"},
    )
    for ext in ext_modules:
        ext.optional = True
except ImportError:
    pass

setup(ext_modules=ext_modules)
