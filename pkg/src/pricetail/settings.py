import os
from pathlib import Path
from pydantic_settings import BaseSettings, SettingsConfigDict

BASE_DIR = os.path.dirname(os.path.abspath(__file__))
ACCEPTANCE_CONFIG = Path(BASE_DIR) / "acceptance" / "acceptance.ini"
EXPERIMENT_SCHEMA = Path(BASE_DIR) / "schema" / "experiments" / "experiment.json"


class Settings(BaseSettings):
    """ Global settings

    jobs: number of worker processes used for sweeps and the acceptance suite when --jobs is not given
    output_dir: the directory where CSV artifacts are written when --out is not given
    """
    model_config = SettingsConfigDict(env_prefix="PRICETAIL_")

    jobs: int = 1
    output_dir: Path = Path("results")
