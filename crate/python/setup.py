"""Builds the blocks_py extension module by delegating to cargo.

The extension is a PyO3 cdylib (crates/blocks-py); this setup script compiles
it in release mode and copies the shared library to the location setuptools
expects for the `blocks_py` module.
"""

import shutil
import subprocess
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

REPO_ROOT = Path(__file__).resolve().parent.parent


class CargoBuildExt(build_ext):
    def build_extension(self, ext):
        subprocess.check_call(
            ["cargo", "build", "--release", "-p", "blocks-py"], cwd=REPO_ROOT
        )
        built = REPO_ROOT / "target" / "release" / "libblocks_py.so"
        dest = Path(self.get_ext_fullpath(ext.name))
        dest.parent.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(built, dest)


setup(
    ext_modules=[Extension("blocks_py", sources=[])],
    cmdclass={"build_ext": CargoBuildExt},
)
