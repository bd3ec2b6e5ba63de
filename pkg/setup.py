from setuptools import setup, Extension
import numpy as np

try:
    from Cython.Build import cythonize
except ImportError:  # the pure-Python kernel is used instead
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension(
            "schurlike.eigen_num._qr_ext",
            ["src/schurlike/eigen_num/_qr_ext.pyx"],
            include_dirs=[np.get_include()],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            extra_compile_args=["-O3", "-fcx-limited-range"],
        )],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
