"""Access to the bundled fixture graphs.

The fixtures are deterministic synthetic stand-ins that reproduce the
headline statistics of the like-named public network datasets (node and
edge counts, one-round peeling survivor fraction, and 2-core fraction to
two decimals); they are not the original data.  tools/make_fixtures.py
regenerates them.
"""

from __future__ import annotations

from importlib import resources

from .graph import Graph, read_graph

_FILES = {
    "soc-dolphins": "soc-dolphins.edges",
    "ca-CSphd": "ca-CSphd.edges",
    "rt_obama": "rt_obama.edges",
    "soc-wiki-Vote": "soc-wiki-Vote.mtx",
    "email-univ": "email-univ.edges",
}


def fixture_names() -> list[str]:
    """Names of the bundled fixture graphs."""
    return sorted(_FILES)


def fixture_path(name: str):
    """Filesystem path of a bundled fixture; raises KeyError on unknown names."""
    try:
        fname = _FILES[name]
    except KeyError:
        raise KeyError(
            f"unknown fixture {name!r}; available: {', '.join(fixture_names())}"
        ) from None
    return resources.files(__package__).joinpath("data").joinpath(fname)


def load_fixture(name: str) -> Graph:
    """Load a bundled fixture graph by name."""
    path = fixture_path(name)
    fmt = "mtx" if str(path).endswith(".mtx") else "edges"
    return read_graph(path, fmt=fmt)
