import sys
from pathlib import Path

# make the package importable without installation, and the oracle helpers too
ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(Path(__file__).resolve().parent))
