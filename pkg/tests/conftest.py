import logging

import pytest

from src import logger as logger_module
from src.polyring import MonicModulus, Poly
from src.sequences import CRecurrence

# Shared polynomials
X_PLUS_ONE = Poly((1, 1))
X_SQUARED_MINUS_TWO = MonicModulus(Poly.constant(2), 2)


@pytest.fixture(autouse=True)
def reset_loggers():
    """Drops handlers added by setup_logger so each test writes to its own captured stderr."""
    yield
    for name, configured in list(logger_module._loggers.items()):
        for handler in list(configured.handlers):
            configured.removeHandler(handler)
        configured.setLevel(logging.NOTSET)
    logger_module._loggers.clear()


@pytest.fixture
def clean_env(mocker):
    """Isolates load_config from the real environment and any local .env file."""
    mocker.patch('src.config.load_dotenv', return_value=True)
    mocker.patch('src.config.os.getenv', side_effect=lambda key, default=None: default)


@pytest.fixture
def fibonacci() -> CRecurrence:
    """A(n) = A(n-1) + A(n-2) with A(0) = A(1) = 1."""
    return CRecurrence.from_high_to_low([1, 1])


@pytest.fixture
def pell_modulus() -> MonicModulus:
    return X_SQUARED_MINUS_TWO
