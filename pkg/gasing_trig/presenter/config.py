import os
from typing import Literal

from dotenv import find_dotenv, load_dotenv
from pydantic import BaseModel, Field

ENV_PREFIX = "GASING_"

LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class Settings(BaseModel):
    log_file: str | None = None
    log_level: LogLevel = "WARNING"
    jobs: int = Field(default=1, ge=1)
    svg_width: int = Field(default=480, ge=16)


def load_settings() -> Settings:
    """Process environment first, then the nearest .env file, then defaults."""
    # load_dotenv never overrides variables that are already set
    load_dotenv(find_dotenv(usecwd=True))
    values = {}
    for name in Settings.model_fields:
        raw = os.getenv(ENV_PREFIX + name.upper())
        if raw:
            values[name] = raw.upper() if name == "log_level" else raw
    return Settings(**values)
