import os
import subprocess
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        # The module lands next to sepcert/__init__.py of the install target.
        outdir = os.path.abspath(os.path.dirname(self.get_ext_fullpath(ext.name)))
        source = os.path.abspath(os.path.dirname(__file__))
        build = os.path.join(self.build_temp, "cmake")
        os.makedirs(build, exist_ok=True)
        subprocess.check_call(
            [
                "cmake",
                source,
                "-DCMAKE_BUILD_TYPE=Release",
                f"-DSEPCERT_PY_OUTDIR={outdir}",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            cwd=build,
        )
        subprocess.check_call(
            ["cmake", "--build", ".", "--target", "_sepcert", "-j"], cwd=build
        )


setup(
    ext_modules=[CMakeExtension("sepcert._sepcert")],
    cmdclass={"build_ext": CMakeBuild},
)
