from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

sources = [
    "src/rng.cpp",
    "src/types.cpp",
    "src/gbm.cpp",
    "src/birth.cpp",
    "src/exits.cpp",
    "src/tailfit.cpp",
    "src/analytics.cpp",
    "src/ma.cpp",
    "src/simulate.cpp",
    "src/config_json.cpp",
    "src/csv.cpp",
    "src/pybind/module.cpp",
]

setup(
    ext_modules=[
        Pybind11Extension(
            "zipflab._zipflab",
            sources=sources,
            include_dirs=["include", "vendor"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)
