"""
================================================================================
Configuration Management - Engine Settings and Environment Variables
================================================================================

DESCRIPTION:
    Centralized configuration using Pydantic BaseSettings. Values come from
    the process environment (prefix HLREACH_) and an optional .env file in
    the working directory. CLI flags override anything set here.

CONFIGURATION CATEGORIES:
    - Logging: level, log directory, optional file handler
    - Build: default index method, duplicate compaction
    - Queries: worker threads for batch queries
    - Benchmarks: query count, seed, engines to time
    - Verification: randomized suite size

ENVIRONMENT VARIABLES (all optional):
    HLREACH_LOG_LEVEL       - Logging level (default: INFO)
    HLREACH_LOG_DIR         - Log and report directory (default: logs)
    HLREACH_LOG_TO_FILE     - Also log to LOG_DIR/YYYYMMDD.log (default: false)
    HLREACH_DEFAULT_METHOD  - basic | fast | minimal (default: minimal)
    HLREACH_COMPACT         - Remove duplicate hyperedges on build (default: true)
    HLREACH_BATCH_THREADS   - Worker threads for batch queries (default: 4)
    HLREACH_BENCH_QUERIES   - Random pairs per benchmark (default: 1000)
    HLREACH_BENCH_SEED      - Benchmark workload seed (default: 42)
    HLREACH_BENCH_METHODS   - Comma-separated engines (default: online,online-pre,index)
    HLREACH_SHOW_PROGRESS   - tqdm progress bars (default: false)
    HLREACH_VERIFY_GRAPHS   - Graphs in the verify suite (default: 200)
    HLREACH_VERIFY_MAX_N    - Largest vertex count in the verify suite (default: 60)

USAGE:
    from hlreach.config import settings

    print(settings.DEFAULT_METHOD)
    print(settings.bench_methods)

.ENV FILE EXAMPLE:
    HLREACH_LOG_LEVEL=DEBUG
    HLREACH_BATCH_THREADS=8
================================================================================
"""
from typing import List

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Engine settings loaded from environment variables.

    All settings are type-validated by Pydantic; a malformed value raises a
    validation error on import.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="HLREACH_",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_DIR: str = "logs"
    LOG_TO_FILE: bool = False

    # Build
    DEFAULT_METHOD: str = "minimal"
    COMPACT: bool = True

    # Queries
    BATCH_THREADS: int = 4

    # Benchmarks
    BENCH_QUERIES: int = 1000
    BENCH_SEED: int = 42
    BENCH_METHODS: str = "online,online-pre,index"

    # Progress bars
    SHOW_PROGRESS: bool = False

    # Verification suite
    VERIFY_GRAPHS: int = 200
    VERIFY_MAX_N: int = 60

    @property
    def bench_methods(self) -> List[str]:
        """Parse benchmark engines from comma-separated string"""
        return [method.strip() for method in self.BENCH_METHODS.split(",") if method.strip()]


settings = Settings()
