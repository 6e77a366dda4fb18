import sys, time


def log(msg, tag=None, stream=None):
    ts = time.strftime("%H:%M:%S")
    prefix = f"[{ts}] [{tag}]" if tag else f"[{ts}]"
    print(f"{prefix} {msg}", file=stream or sys.stdout, flush=True)


def warn(msg):
    log(msg, tag="warn", stream=sys.stderr)
