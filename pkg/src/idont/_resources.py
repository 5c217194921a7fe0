import json
import os
from importlib import resources
from pathlib import Path


def data_dir(kind):
    return resources.files("idont") / "data" / kind


def resolve(kind, name_or_path):
    """Map a bundled data name (``"te"``) or a filesystem path to a readable path."""
    path = Path(name_or_path)
    if path.suffix == ".json" or os.sep in str(name_or_path) or path.exists():
        return path
    candidate = data_dir(kind) / f"{name_or_path}.json"
    if not candidate.is_file():
        raise FileNotFoundError(f"no bundled {kind[:-1]} named {name_or_path!r}")
    return candidate


def load_json(kind, name_or_path):
    with resolve(kind, name_or_path).open(encoding="utf-8") as fh:
        return json.load(fh)


def bundled_names(kind):
    return sorted(p.name[:-5] for p in data_dir(kind).iterdir() if p.name.endswith(".json"))
