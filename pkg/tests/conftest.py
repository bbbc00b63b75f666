import numpy as np
import pytest
from PIL import Image


@pytest.fixture
def png_factory(tmp_path):
    def make(pixels, name="img.png"):
        path = tmp_path / name
        Image.fromarray(np.asarray(pixels, dtype=np.uint8)).save(path)
        return path

    return make


@pytest.fixture
def gif_factory(tmp_path):
    def make(frames, name="anim.gif"):
        path = tmp_path / name
        ims = [Image.fromarray(np.asarray(f, dtype=np.uint8)) for f in frames]
        ims[0].save(path, save_all=True, append_images=ims[1:], duration=100, loop=0)
        return path

    return make


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
