from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "bosonic_mac._core",
                ["src/bosonic_mac/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # The package still works without the extension; the pure-Python
    # kernels in bosonic_mac._core_py are selected at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
