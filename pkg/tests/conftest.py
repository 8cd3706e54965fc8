from pathlib import Path

import pytest

from fluxline.transmon import TransmonParams

REPO = Path(__file__).resolve().parents[1]
DATA = REPO / "data"
FIXTURES = DATA / "fixtures"
EXAMPLE_CONFIG = DATA / "example_device.json"

# published parameters of the four-qubit device used throughout the suite:
# name -> (e_c, e_j1, e_j2, f_max, f_min, anharmonicity), MHz
DEVICE_TABLE = {
    "q0": (182.0, 2140.0, 9040.0, 3851.0, 2981.0, -206.0),
    "q1": (185.0, 2360.0, 9090.0, 3786.0, 2956.0, -208.0),
    "q2": (185.0, 2160.0, 9300.0, 3919.0, 3050.0, -208.0),
    "q3": (186.0, 2250.0, 8860.0, 3870.0, 2936.0, -210.0),
}


@pytest.fixture(scope="session")
def q0() -> TransmonParams:
    e_c, e_j1, e_j2, *_ = DEVICE_TABLE["q0"]
    return TransmonParams(e_c=e_c, e_j1=e_j1, e_j2=e_j2)


@pytest.fixture(scope="session")
def device_params() -> dict[str, TransmonParams]:
    return {
        name: TransmonParams(e_c=row[0], e_j1=row[1], e_j2=row[2])
        for name, row in DEVICE_TABLE.items()
    }


@pytest.fixture()
def example_config() -> Path:
    return EXAMPLE_CONFIG
