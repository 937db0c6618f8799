import pytest

from cartan_toric import cartan_matrix

BATTERY = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4"]
SMALL = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]


@pytest.fixture(params=BATTERY)
def battery_type(request):
    return cartan_matrix(request.param)
