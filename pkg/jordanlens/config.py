import logging
import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

DEFAULT_TOL = 1e-8
DEFAULT_SAMPLES = 720

LOG_FORMAT = "%(levelname)-5.5s [%(name)s] %(message)s"


class Settings(BaseModel):
    tol: float = Field(DEFAULT_TOL, gt=0, lt=0.1, description="Angle/rank classification tolerance")
    samples: int = Field(DEFAULT_SAMPLES, ge=3, description="Ellipse samples and oracle angles")
    workers: int = Field(1, ge=1, description="Threads used by the support oracle")
    log_level: str = "WARNING"


def load_settings(**overrides) -> Settings:
    """Settings from the environment (and `.env`), with non-None overrides taking precedence"""
    load_dotenv()
    values = {
        "tol": os.getenv("JORDANLENS_TOL"),
        "samples": os.getenv("JORDANLENS_SAMPLES"),
        "workers": os.getenv("JORDANLENS_WORKERS"),
        "log_level": os.getenv("JORDANLENS_LOG_LEVEL"),
    }
    values.update({key: value for key, value in overrides.items() if value is not None})
    return Settings(**{key: value for key, value in values.items() if value is not None})


def get_settings() -> Settings:
    """Read on every call so the current environment always applies"""
    return load_settings()


def configure_logging(level: Optional[str] = None) -> None:
    level = (level or get_settings().log_level).upper()
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger("jordanlens").setLevel(level)
