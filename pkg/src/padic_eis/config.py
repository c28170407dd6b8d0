from __future__ import annotations
import pathlib
from pydantic import BaseModel, Field, DirectoryPath, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class PrecisionConfig(BaseModel):
    target: int = Field(default=4, ge=1, le=32)
    guard: int = Field(default=2, ge=1, le=8)

    @property
    def working(self) -> int:
        return self.target + self.guard


class CacheConfig(BaseModel):
    dir: pathlib.Path = Field(default_factory=lambda: pathlib.Path(".cache/series"))
    enabled: bool = True


class AppConfig(BaseSettings):
    env: str = Field(default="dev")
    out_dir: DirectoryPath = Field(default_factory=lambda: pathlib.Path("out"))
    log_level: str = Field(default="INFO", pattern="^(DEBUG|INFO|WARNING|ERROR)$")
    jobs: int = Field(default=4, ge=1, le=64)
    max_extension_degree: int = Field(default=6, ge=1, le=24)
    precision: PrecisionConfig = Field(default_factory=PrecisionConfig)
    cache: CacheConfig = Field(default_factory=CacheConfig)

    @field_validator("out_dir", mode="before")
    @classmethod
    def ensure_out_dir(cls, v) -> pathlib.Path:
        pathlib.Path(v).mkdir(parents=True, exist_ok=True)
        return pathlib.Path(v)

    model_config = SettingsConfigDict(
        env_prefix="PADIC_EIS_",
        case_sensitive=False,
        env_file=".env",
        env_file_encoding="utf-8",
        env_nested_delimiter="__",
        extra="ignore",
    )


cfg = AppConfig()
