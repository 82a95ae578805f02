from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "hdxcheck.kernels._native",
        ["src/hdxcheck/kernels/_native.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
