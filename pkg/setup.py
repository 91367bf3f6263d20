from Cython.Build import cythonize
from setuptools import Extension, setup

# -ffp-contract=off: the compiled kernel must be bit-identical to the pure
# Python lane, so FMA contraction of a*b+c patterns is disabled.  No
# -ffast-math: compensated summation relies on IEEE rounding.
extensions = [
    Extension(
        "dslab._kernel_cy",
        ["src/dslab/_kernel_cy.pyx"],
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
