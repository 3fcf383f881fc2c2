"""Make the sibling helpers module importable regardless of invocation dir."""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
