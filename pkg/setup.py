from setuptools import Extension, setup

# The compiled kernels are optional: if Cython or a C compiler is missing the
# package falls back to the numpy implementations in cpintegral._kernels_py.
try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "cpintegral._kernels",
                ["src/cpintegral/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
