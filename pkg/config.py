import os
from dataclasses import dataclass, field
from typing import Optional

from errors import ConfigError
from residues import is_prime


def _env_int(name, default):
    value = os.environ.get(name)
    if value is None or value == '':
        return default
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {value!r}") from None


class Config:
    """Verification run configuration"""

    # Parallelism - QCLAB_THREADS overrides
    THREADS = os.cpu_count() or 1

    # Persistence - QCLAB_DATABASE_URL overrides; off when None
    DATABASE_URL = None

    # Grids
    Q_PRIMES = [3, 5, 7, 11, 13]
    INT_PRIME_MAX = 200
    M_MAX = 8
    S_MAX = None
    CONJECTURE_PRIMES = [5, 7]
    CONJECTURE_M_MAX = 6
    Q_TO_ONE_PRIME_MAX = 7
    IDENTITY_N_MAX_DEFAULT = 6
    IDENTITY_N_MAX = {
        'thm2.5': 8,
        'conj7.2': 6,
        'lemma4.1a': 6,
        'lemma4.1b': 6,
        'lemma4.2a': 6,
        'lemma4.2b': 6,
        'lemma4.3': 5,
        'lemma4.4': 5,
        'qdixon': 3,
    }

    # Exponent table: check every s up to <-(m-r)/m>_p
    F_S_RANGE = 'full'

    # Logging
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO')


class DevelopmentConfig(Config):
    """Full grids"""


class QuickConfig(Config):
    """Small grids for smoke runs"""
    Q_PRIMES = [3, 5, 7]
    INT_PRIME_MAX = 50
    M_MAX = 4
    CONJECTURE_PRIMES = [5]
    CONJECTURE_M_MAX = 4
    IDENTITY_N_MAX_DEFAULT = 4
    IDENTITY_N_MAX = {'thm2.5': 4, 'lemma4.3': 4, 'lemma4.4': 4, 'qdixon': 2}
    F_S_RANGE = 'basic'


class TestingConfig(Config):
    """Tiny grids and an in-memory store"""
    THREADS = 1
    DATABASE_URL = 'sqlite:///:memory:'
    Q_PRIMES = [3, 5]
    INT_PRIME_MAX = 13
    M_MAX = 3
    CONJECTURE_PRIMES = [5]
    CONJECTURE_M_MAX = 3
    Q_TO_ONE_PRIME_MAX = 5
    IDENTITY_N_MAX_DEFAULT = 2
    IDENTITY_N_MAX = {'qdixon': 1}
    F_S_RANGE = 'basic'


# Configuration mapping
config = {
    'development': DevelopmentConfig,
    'quick': QuickConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}

DEFAULT_PROFILE = os.environ.get('QCLAB_PROFILE', 'default')

OUTPUT_FORMATS = ('text', 'json', 'csv')


@dataclass
class RunConfig:
    """One CLI invocation: the profile's grids overridden by flags"""

    command: str
    profile: str = 'default'
    fmt: str = 'text'
    output: Optional[str] = None
    threads: int = 1
    store: Optional[str] = None
    timings: bool = False
    ids: list[str] = field(default_factory=list)
    primes: list[int] = field(default_factory=list)
    int_primes: list[int] = field(default_factory=list)
    prime_max: int = 200
    n_max: Optional[int] = None
    m_max: int = 8
    r_max: Optional[int] = None
    s_max: Optional[int] = None
    pairs: list[tuple[int, list[int]]] = field(default_factory=list)
    conjecture_primes: list[int] = field(default_factory=list)
    conjecture_m_max: int = 6
    q_to_one_prime_max: int = 7
    identity_n_max: dict = field(default_factory=dict)
    identity_n_default: int = 6
    f_s_range: str = 'full'

    def __post_init__(self):
        if self.fmt not in OUTPUT_FORMATS:
            raise ConfigError(f"unknown format {self.fmt!r}")
        if self.threads < 1:
            raise ConfigError(f"threads must be positive, got {self.threads}")
        for p in self.primes + self.int_primes + self.conjecture_primes:
            if p == 2 or not is_prime(p):
                raise ConfigError(f"{p} is not an odd prime")
        for name in ('prime_max', 'n_max', 'm_max', 'r_max'):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ConfigError(f"{name} must be positive, got {value}")
        if self.s_max is not None and self.s_max < 0:
            raise ConfigError(f"s_max must be nonnegative, got {self.s_max}")

    @classmethod
    def from_profile(cls, command: str, profile: str = DEFAULT_PROFILE, **overrides) -> 'RunConfig':
        if profile not in config:
            raise ConfigError(f"unknown profile {profile!r}; choose from {', '.join(sorted(config))}")
        base = config[profile]
        values = dict(
            command=command,
            profile=profile,
            threads=_env_int('QCLAB_THREADS', base.THREADS),
            store=os.environ.get('QCLAB_DATABASE_URL') or base.DATABASE_URL,
            primes=list(base.Q_PRIMES),
            prime_max=base.INT_PRIME_MAX,
            m_max=base.M_MAX,
            s_max=base.S_MAX,
            conjecture_primes=list(base.CONJECTURE_PRIMES),
            conjecture_m_max=base.CONJECTURE_M_MAX,
            q_to_one_prime_max=base.Q_TO_ONE_PRIME_MAX,
            identity_n_max=dict(base.IDENTITY_N_MAX),
            identity_n_default=base.IDENTITY_N_MAX_DEFAULT,
            f_s_range=base.F_S_RANGE,
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def n_max_for(self, check_id: str) -> int:
        if self.n_max is not None:
            return self.n_max
        return self.identity_n_max.get(check_id, self.identity_n_default)
