import os

ENGINE_VERSION = "1"

DEFAULT_CACHE_DIR = os.environ.get(
    "PYNS2_CACHE_DIR", os.path.expanduser(os.path.join("~", ".cache", "pyns2"))
)
