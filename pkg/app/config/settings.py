import os

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Project wide settings.
    """

    SERVICE_NAME: str = Field("ToricStability", frozen=True)
    DEBUG: bool = os.getenv("DEBUG", "false").lower() == "true"

    DECIMAL_DIGITS: int = Field(15, ge=1, le=200)
    SCAN_JOBS: int = Field(1, ge=1)
    ENUMERATION_METHOD: str = "double_description"
    SCHEMA_VERSION: str = Field("1.0", frozen=True)

    model_config = SettingsConfigDict(
        env_file=(".env", ".env.local"),
        env_file_encoding="utf-8",
        extra="ignore",
    )


settings = Settings()
