import contextlib
import os
import pathlib

import pytest
from fluor.materials import synthetic_library
from fluor.spectral.grid import WavelengthGrid

FIXTURE_DIR = pathlib.Path(__file__).resolve().parent / "fixtures"


@pytest.fixture
def fixture_file():
    def _fixture_file(*args):
        return FIXTURE_DIR.joinpath(*args)
    return _fixture_file


@pytest.fixture(scope="session")
def canonical_library():
    """The synthetic materials on the 300:800:1 grid, built once"""
    return synthetic_library(WavelengthGrid.canonical())


@contextlib.contextmanager
def chdir(path: pathlib.Path):
    curpath = pathlib.Path.cwd()
    os.chdir(path)
    try:
        yield
    finally:
        os.chdir(curpath)
