import logging

from logging import config

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {"verbose": {"format": LOG_FORMAT}},
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
            "level": "DEBUG",
            "stream": "ext://sys.stderr",
        }
    },
    "root": {"handlers": ["console"], "level": "WARNING"},
    "loggers": {"src": {"level": "INFO", "propagate": True}},
}


def setup_logging(level: str | None = None) -> None:
    config.dictConfig(LOGGING)
    if level is not None:
        logging.getLogger("src").setLevel(level.upper())


setup_logging()


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
