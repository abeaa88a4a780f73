import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from polyfan.corpus import sheaf_corpus
from polyfan.fans import face_fan, support_function
from polyfan.ihsheaf import build_mes


@pytest.fixture(scope="session")
def sheaf_setups():
    """(polytope, fan, sheaf at cap 8, support function) per corpus name;
    built once because the sheaf caches all degreewise data."""
    out = {}
    for name, p in sheaf_corpus():
        fan = face_fan(p)
        mes = build_mes(fan, 8)
        out[name] = (p, fan, mes, support_function(p, fan))
    return out
