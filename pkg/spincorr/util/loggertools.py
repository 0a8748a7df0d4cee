import logging
from typing import Optional, Union

_logger: Optional[logging.Logger] = None


def get_logger() -> logging.Logger:
    global _logger
    if not _logger:
        _logger = logging.getLogger("spincorr")
        _logger.propagate = False
        _handler = logging.StreamHandler()
        _handler.setFormatter(
            logging.Formatter("%(asctime)s: %(levelname)s: %(message)s")
        )
        _logger.addHandler(_handler)
        _logger.setLevel(logging.INFO)
    return _logger


def set_log_level(level: Union[int, str]) -> None:
    get_logger().setLevel(level)
