import os
from dotenv import load_dotenv

load_dotenv()

# Operational knobs: logging and parallelism only, never output bytes.
LOG_LEVEL = os.getenv("HARP_LOG_LEVEL", "WARNING").upper()
LOG_FILE = os.getenv("HARP_LOG_FILE", "")
WORKERS = int(os.getenv("HARP_WORKERS", "1"))

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# Test generation
LOOP_BOUND = 2
PATH_CAP = 100000

# Prioritization
CANDIDATE_LIMIT = 10
HINT_DRAW_PROBABILITY = 0.5

# Hint quality
GOOD_HINT_RANGE = (0.20, 0.50)

# Effect size labels: (upper, lower) pairs, strict inequalities
A12_LARGE = (0.71, 0.29)
A12_MEDIUM = (0.64, 0.36)

# Experiments
REPETITIONS = 1000
DESK_REPETITIONS = 200
DESK_MODELS = 20
DESK_MAX_CASES = 200
BASE_SEED = 20160901
GENERATOR_ATTEMPTS = 200
MAX_REVEALING_SHARE = 0.5
PLANTING_ATTEMPTS = 200
OBJECT_ATTEMPTS = 50

CSV_DECIMALS = 6
CSV_HEADER = "model,technique,hint,seed,trial,metric,value"
SUMMARY_HEADER = "model,metric,technique_a,technique_b,statistic,effect"

TECHNIQUES = ("harp", "harp-jaccard", "arp-jaccard", "greedy", "random")
HINTED_TECHNIQUES = ("harp", "harp-jaccard")
RANDOMIZED_TECHNIQUES = ("harp", "harp-jaccard", "arp-jaccard", "random")
METRICS = ("apfd", "fmeasure")

# Synthetic model parameter limits
SYNTHETIC_STATES = (1, 60)
SYNTHETIC_BRANCHES = (0, 20)
SYNTHETIC_LOOPS = (0, 6)

# Desk experiment defaults for synthetic models (inclusive ranges)
DESK_STATES = (20, 45)
DESK_BRANCHES = (4, 10)
DESK_JOINS = (1, 4)
DESK_LOOPS = (1, 3)
DESK_FAULTS = 1
DESK_MIN_CASES = 15
