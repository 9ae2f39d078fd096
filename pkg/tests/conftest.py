import pathlib

import pytest

from hiprove.script import parse_flat, parse_packaged

ROOT = pathlib.Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "golden"

PACKAGED_FILES = sorted(GOLDEN.glob("*.pk"))
FLAT_FILES = sorted(GOLDEN.glob("*.fl"))


def load_packaged(path):
    return parse_packaged(path.read_text())


def load_flat(path):
    return parse_flat(path.read_text())


@pytest.fixture(params=PACKAGED_FILES, ids=lambda p: p.stem)
def golden_packaged(request):
    return load_packaged(request.param)


@pytest.fixture(params=FLAT_FILES, ids=lambda p: p.stem)
def golden_flat(request):
    return load_flat(request.param)
