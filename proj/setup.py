"""CMake-driven extension build; package metadata lives in pyproject.toml."""

import subprocess
import sys
from pathlib import Path

import pybind11
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str) -> None:
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        out_dir = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        source_dir = Path(__file__).parent.resolve()

        subprocess.run(
            [
                "cmake",
                str(source_dir),
                f"-DCMAKE_BUILD_TYPE={'Debug' if self.debug else 'Release'}",
                f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={out_dir}",
                f"-DPython3_EXECUTABLE={sys.executable}",
                f"-DPython_EXECUTABLE={sys.executable}",
                f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
                "-DFFGAIN_PYTHON=ON",
            ],
            cwd=build_dir,
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_ffgain", "-j"],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("ffgain._ffgain")],
    cmdclass={"build_ext": CMakeBuild},
)
