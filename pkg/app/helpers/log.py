import logging

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def setup_logging(level: str = "WARNING") -> None:
    """Configure the root logger once per entry point."""
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT, force=True)
