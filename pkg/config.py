from pathlib import Path


class Config:
    BASE_DIR = Path(__file__).resolve().parent
    FIXTURE_DIR = BASE_DIR / "fixtures"

    # Closure operators given as flat lists are checked on every subset.
    EXHAUSTIVE_GROUND_LIMIT = 16
    MAX_GROUND = 4096
    MAX_FLATS = 1 << 16
    MAX_FIELD_SIZE = 4096

    # Sampled verification of algebraic operators above the exhaustive limit
    SAMPLE_SEED = 20240607
    SAMPLE_SETS = 48
    SAMPLE_TRIPLES = 240
    SAMPLE_PAIR_LIMIT = 32

    MAX_GROUP_ORDER = 64
    # Order and strong generators only; larger groups are never listed.
    MAX_CHAIN_GROUP_ORDER = 256
    MAX_AUTOMORPHISMS = 25000
    DEFAULT_KMAX = 2
    MAX_KMAX = 3

    CONFIG_KEEP_WITNESSES = 32

    LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
