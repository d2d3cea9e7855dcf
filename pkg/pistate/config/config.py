from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    debug: bool = False
    log_level: str = "WARNING"

    # exact LP
    fm_max_vars: int = 4
    fm_row_limit: int = 2000

    # Monte-Carlo backend
    sampler_samples: int = 100_000
    default_seed: int = 0

    # countermodel search
    search_samples: int = 200
    search_delta: str = "1/100"
    search_denominator: int = 64
    search_grid_max_arity: int = 4

    float_digits: int = 12

    model_config = SettingsConfigDict(
        env_prefix="PISTATE_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore"
    )


settings = Settings()
