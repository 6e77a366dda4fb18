import hashlib, json
from pathlib import Path
import pandas as pd
from .errors import OutputError


def config_hash(cfg: dict) -> str:
    blob = json.dumps(cfg, sort_keys=True, default=str).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def write_csv(df: pd.DataFrame, path, header: dict | None = None) -> Path:
    """Write `df` with `# key=value` comment lines in front of the column row."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            for k, v in (header or {}).items():
                fh.write(f"# {k}={v}\n")
            df.to_csv(fh, index=False)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    return path


def read_header(path) -> dict:
    out = {}
    try:
        with Path(path).open() as fh:
            for line in fh:
                if not line.startswith("#"):
                    break
                key, _, value = line[1:].strip().partition("=")
                out[key.strip()] = value.strip()
    except OSError as exc:
        raise OutputError(f"cannot read {path}: {exc}") from exc
    return out


def read_csv(path) -> tuple[pd.DataFrame, dict]:
    try:
        df = pd.read_csv(path, comment="#")
    except OSError as exc:
        raise OutputError(f"cannot read {path}: {exc}") from exc
    return df, read_header(path)
