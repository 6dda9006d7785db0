from setuptools import setup, Extension
from Cython.Build import cythonize


ext_module = Extension(
    "mlf._kernels",
    ["src/mlf/_kernels.pyx"],
)


setup(
    ext_modules = cythonize(ext_module, language_level=3),
)
