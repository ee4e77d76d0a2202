import sys
from pathlib import Path

from hypothesis import settings

# Add current directory to path
sys.path.insert(0, str(Path(__file__).parent))

# Exact identities are checked on reproducible corpora; symbolic expansion
# time varies too much for per-example deadlines.
settings.register_profile("exact", derandomize=True, deadline=None, max_examples=50)
settings.load_profile("exact")
