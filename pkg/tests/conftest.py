import pathlib
import warnings

import pytest

from syncoords.smiles import parse_smiles

CORPUS_PATH = (
    pathlib.Path(__file__).parents[1] / "src" / "syncoords" / "data" / "corpus.smi"
)


def corpus_smiles() -> list[str]:
    return [
        line.strip()
        for line in CORPUS_PATH.read_text().splitlines()
        if line.strip() and not line.startswith("#")
    ]


@pytest.fixture(scope="session")
def corpus():
    """(smiles, graph) pairs for the shipped 50-molecule corpus."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return [(s, parse_smiles(s)) for s in corpus_smiles()]


def kernel_backends():
    from syncoords import _speedups_py

    backends = [pytest.param(_speedups_py, id="python")]
    try:
        from syncoords import _speedups

        backends.append(pytest.param(_speedups, id="cython"))
    except ImportError:
        pass
    return backends
