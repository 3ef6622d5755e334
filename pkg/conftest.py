import sys
from pathlib import Path

# let `pytest` work from a fresh checkout without an editable install
src = str(Path(__file__).parent / "src")
if src not in sys.path:
    sys.path.insert(0, src)
