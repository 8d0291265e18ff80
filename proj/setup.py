"""Builds the `_core` extension with CMake and packages it with the pure
Python shim in python/entsec."""

import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str) -> None:
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        out_dir = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        build_dir = Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)
        source_dir = Path(__file__).parent.resolve()
        subprocess.run(
            [
                "cmake",
                str(source_dir),
                f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={out_dir}",
                f"-DPython_EXECUTABLE={sys.executable}",
                "-DCMAKE_BUILD_TYPE=Release",
                "-DENTSEC_BUILD_PYTHON=ON",
                "-DENTSEC_BUILD_TESTS=OFF",
                "-DENTSEC_BUILD_CLI=OFF",
            ],
            cwd=build_dir,
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core", "--parallel"],
            cwd=build_dir,
            check=True,
        )


setup(
    packages=["entsec"],
    package_dir={"entsec": "python/entsec"},
    ext_modules=[CMakeExtension("entsec._core")],
    cmdclass={"build_ext": CMakeBuild},
)
