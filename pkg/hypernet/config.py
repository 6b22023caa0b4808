import os
from dotenv import load_dotenv

# Load environment variables from a .env file
load_dotenv()

MAX_BUILD_NODES = int(os.getenv("HYPERNET_MAX_NODES", 200000))
MAX_ALL_PAIRS_NODES = int(
    os.getenv("HYPERNET_ALL_PAIRS_MAX_NODES", min(5000, MAX_BUILD_NODES))
)
DEFAULT_SEED = int(os.getenv("HYPERNET_SEED", 42))
SIM_TOLERANCE = float(os.getenv("HYPERNET_SIM_TOLERANCE", 0.02))
SIM_MIN_SAMPLES = int(os.getenv("HYPERNET_SIM_MIN_SAMPLES", 100000))
LOG_LEVEL = os.getenv("HYPERNET_LOG_LEVEL", "WARNING").upper()

# Ranking rows further than this from the published percentage get a note.
PUBLISHED_TOLERANCE_PCT = 5.0
# Relative gap under which link and peer demands count as balanced.
BALANCE_TOLERANCE = 1e-12

UINT64_MAX = 2**64 - 1
