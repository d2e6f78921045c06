from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "blockfade._blockfade",
    sources=[
        "src/bindings/pymodule.cpp",
        "src/blockfade/types.cpp",
        "src/blockfade/util.cpp",
        "src/blockfade/rng.cpp",
        "src/blockfade/trace.cpp",
        "src/blockfade/distributions.cpp",
        "src/blockfade/segmentation.cpp",
        "src/blockfade/markov.cpp",
        "src/blockfade/synthesis.cpp",
        "src/blockfade/model_io.cpp",
    ],
    include_dirs=["src", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
