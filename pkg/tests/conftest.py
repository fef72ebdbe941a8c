import pytest
from hypothesis import settings

from dcs.exactnum import ModelParams

settings.register_profile("dcs", max_examples=60, deadline=None)
settings.load_profile("dcs")


@pytest.fixture(params=[(1, 1), (2, 1), (1, 2), (3, 2)], ids=lambda rs: f"rs{rs[0]}{rs[1]}")
def params(request):
    return ModelParams(*request.param)
