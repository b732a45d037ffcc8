from dotenv import load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class Settings(BaseSettings):
    max_n: int = 12
    parallelism: int = 1
    output_dir: str = "out"
    deterministic: bool = True
    log_level: str = "INFO"
    # hard cap on visited search states
    max_states: int = 500

    model_config = SettingsConfigDict(env_prefix="DELPEZZO_", extra="ignore")


settings = Settings()
