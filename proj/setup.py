"""CMake-driven build of the _stabent extension module."""

import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        out = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        src = Path(__file__).resolve().parent
        build = Path(self.build_temp).resolve()
        build.mkdir(parents=True, exist_ok=True)
        cfg = [
            "cmake",
            "-S", str(src),
            "-B", str(build),
            "-DCMAKE_BUILD_TYPE=Release",
            "-DSTABENT_PYTHON=ON",
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={out}",
            f"-DPython_EXECUTABLE={sys.executable}",
        ]
        subprocess.run(cfg, check=True)
        subprocess.run(
            ["cmake", "--build", str(build), "--target", "_stabent", "-j"],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("stabent._stabent")],
    cmdclass={"build_ext": CMakeBuild},
)
