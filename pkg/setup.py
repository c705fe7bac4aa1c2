"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a numpy fallback is selected at
import); `optional=True` keeps installs alive on machines without a C
compiler.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "ginsum._kernels_cy",
        ["src/ginsum/_kernels_cy.pyx"],
        extra_compile_args=["-O3"],
        optional=True,
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
    if cythonize is not None
    else [],
)
