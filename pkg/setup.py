"""Build hook for the optional compiled bitset kernels.

The package works without them; ``dvpower.kernels`` falls back to the
pure-Python implementation when the extension is missing.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # no Cython: install the pure-Python package only
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("dvpower._bitkernels", ["src/dvpower/_bitkernels.pyx"], optional=True)],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )

setup(ext_modules=ext_modules)
