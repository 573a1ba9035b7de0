import sys
from pathlib import Path

# Make the src package importable from root-level tests
sys.path.insert(0, str(Path(__file__).parent))
