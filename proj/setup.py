import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

SOURCE_DIR = Path(__file__).resolve().parent


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        import pybind11

        extdir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        build_temp = Path(self.build_temp).resolve() / ext.name
        build_temp.mkdir(parents=True, exist_ok=True)

        cmake_args = [
            "-DVACQKD_PYTHON_ONLY=ON",
            "-DCMAKE_BUILD_TYPE=Release",
            f"-DVACQKD_EXT_OUTPUT_DIR={extdir}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
        ]
        subprocess.run(
            ["cmake", "-S", str(SOURCE_DIR), "-B", str(build_temp), *cmake_args], check=True
        )
        subprocess.run(
            ["cmake", "--build", str(build_temp), "--target", "_core",
             "-j", str(os.cpu_count() or 2)],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("vacqkd._core")],
    cmdclass={"build_ext": CMakeBuild},
)
