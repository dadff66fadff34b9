"""
Centralized configuration management using Pydantic Settings.
Every tunable constant of the constructions and the verifier lives here.
"""

from pathlib import Path
from typing import Optional, Literal, Tuple
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings
from dotenv import load_dotenv


class ResidueSettings(BaseSettings):
    """Residue arithmetic limits."""

    max_prime: int = Field(2**31 - 1, env='RESIDUE_MAX_PRIME')

    class Config:
        env_prefix = 'RESIDUE_'


class ConstructionSettings(BaseSettings):
    """Constants for the deterministic constructors."""

    basic_ident_k: int = Field(15, env='CONSTRUCT_BASIC_IDENT_K')
    small_value_c: float = Field(4.0, env='CONSTRUCT_SMALL_VALUE_C')
    strong_ident_c: float = Field(4.0, env='CONSTRUCT_STRONG_IDENT_C')
    five_prime_c1: float = Field(4.0, env='CONSTRUCT_FIVE_PRIME_C1')
    five_prime_c2: float = Field(4.0, env='CONSTRUCT_FIVE_PRIME_C2')
    default_primes: str = Field('7,11,13', env='CONSTRUCT_DEFAULT_PRIMES')

    @field_validator('basic_ident_k')
    @classmethod
    def validate_k(cls, v):
        """K must be a positive multiplier."""
        if v < 1:
            raise ValueError('basic_ident_k must be at least 1')
        return v

    @field_validator('small_value_c', 'strong_ident_c', 'five_prime_c1', 'five_prime_c2')
    @classmethod
    def validate_positive(cls, v):
        """Bound constants must be positive."""
        if v <= 0:
            raise ValueError('bound constants must be positive')
        return v

    @property
    def default_prime_list(self) -> Tuple[int, ...]:
        return tuple(int(p) for p in self.default_primes.split(',') if p.strip())

    class Config:
        env_prefix = 'CONSTRUCT_'


class RandomSettings(BaseSettings):
    """Seeded randomness and Las Vegas retry policy."""

    seed: int = Field(0, env='RANDOM_SEED')
    max_retries: int = Field(64, env='RANDOM_MAX_RETRIES')
    algorithm: Literal['PCG64'] = Field('PCG64', env='RANDOM_ALGORITHM')

    @field_validator('max_retries')
    @classmethod
    def validate_retries(cls, v):
        """At least one attempt is always made."""
        if v < 1:
            raise ValueError('max_retries must be at least 1')
        return v

    @field_validator('seed')
    @classmethod
    def validate_seed(cls, v):
        if not 0 <= v < 2**64:
            raise ValueError('seed must fit in 64 bits')
        return v

    class Config:
        env_prefix = 'RANDOM_'


class VerificationSettings(BaseSettings):
    """Budgets for exhaustive and sampled verification."""

    budget: int = Field(10**8, env='VERIFY_BUDGET')
    samples: int = Field(10**6, env='VERIFY_SAMPLES')
    bitset_limit: int = Field(2**26, env='VERIFY_BITSET_LIMIT')
    joint_image_limit: int = Field(10**7, env='VERIFY_JOINT_IMAGE_LIMIT')
    chunk_size: int = Field(2**20, env='VERIFY_CHUNK_SIZE')
    exhaustive_witness_limit: int = Field(10**5, env='VERIFY_EXHAUSTIVE_WITNESS_LIMIT')
    exact_density_terms: int = Field(5000, env='VERIFY_EXACT_DENSITY_TERMS')
    workers: int = Field(1, env='VERIFY_WORKERS')

    @field_validator('budget', 'samples', 'chunk_size', 'workers')
    @classmethod
    def validate_positive(cls, v):
        if v < 1:
            raise ValueError('verification budgets must be positive')
        return v

    class Config:
        env_prefix = 'VERIFY_'


class AssemblySettings(BaseSettings):
    """Staged assembly limits."""

    max_coordinates: int = Field(10**6, env='ASSEMBLY_MAX_COORDINATES')
    mode: Literal['strict', 'relaxed'] = Field('relaxed', env='ASSEMBLY_MODE')
    max_case_prime: int = Field(2**31 - 1, env='ASSEMBLY_MAX_CASE_PRIME')
    schedule: Literal['linear', 'fitted'] = Field('linear', env='ASSEMBLY_SCHEDULE')
    base_primes: str = Field('5,7,11', env='ASSEMBLY_BASE_PRIMES')
    epsilon: float = Field(0.5, env='ASSEMBLY_EPSILON')

    @field_validator('epsilon')
    @classmethod
    def validate_epsilon(cls, v):
        if not 0 < v < 1:
            raise ValueError('epsilon must lie in (0, 1)')
        return v

    @property
    def base_prime_list(self) -> Tuple[int, ...]:
        return tuple(int(p) for p in self.base_primes.split(',') if p.strip())

    class Config:
        env_prefix = 'ASSEMBLY_'


class LoggingSettings(BaseSettings):
    """Logging configuration settings."""

    level: Literal['DEBUG', 'INFO', 'WARNING', 'ERROR'] = Field('INFO', env='LOG_LEVEL')
    file: Optional[str] = Field(None, env='LOG_FILE')
    format: str = Field(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        env='LOG_FORMAT'
    )

    class Config:
        env_prefix = 'LOG_'


class PathSettings(BaseSettings):
    """File path configuration."""

    output_dir: Path = Field(Path('results'), env='OUTPUT_DIR')

    def ensure_directories(self):
        """Create directories if they don't exist."""
        self.output_dir.mkdir(parents=True, exist_ok=True)

    class Config:
        env_prefix = ''


class Settings(BaseSettings):
    """Main settings class that combines all configuration sections."""

    residue: ResidueSettings = Field(default_factory=ResidueSettings)
    construction: ConstructionSettings = Field(default_factory=ConstructionSettings)
    random: RandomSettings = Field(default_factory=RandomSettings)
    verification: VerificationSettings = Field(default_factory=VerificationSettings)
    assembly: AssemblySettings = Field(default_factory=AssemblySettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)
    paths: PathSettings = Field(default_factory=PathSettings)

    class Config:
        env_file = 'config/.env'
        case_sensitive = False
        extra = 'ignore'

    def validate_config(self) -> bool:
        """Validate cross-section constraints."""
        errors = []

        if self.verification.joint_image_limit > self.verification.bitset_limit:
            errors.append("VERIFY_JOINT_IMAGE_LIMIT must not exceed VERIFY_BITSET_LIMIT")

        for p in self.construction.default_prime_list:
            if p < 3:
                errors.append(f"CONSTRUCT_DEFAULT_PRIMES contains {p} < 3")

        if errors:
            for error in errors:
                print(f"Configuration error: {error}")
            raise ValueError("Configuration validation failed")

        return True


# Load .env file before creating settings instance
env_file = Path(__file__).parent.parent.parent / "config" / ".env"
if env_file.exists():
    load_dotenv(env_file)

settings = Settings()


def get_settings() -> Settings:
    """Get the global settings instance."""
    return settings


class ExitCodes:
    """Standard exit codes for consistent error handling."""
    SUCCESS = 0
    CHECK_FAILURE = 1
    INFEASIBLE = 2
    USAGE_ERROR = 3
    INTERRUPTED = 130  # Standard SIGINT code
