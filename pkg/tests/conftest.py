"""Shared fixtures: bundled tables, default topology, independent parses."""

import csv

import pytest

import stockswarm as ss


@pytest.fixture(scope="session")
def paths():
    return ss.fixture_paths()


@pytest.fixture(scope="session")
def topology():
    return ss.Topology()


@pytest.fixture(scope="session")
def store(paths, topology):
    return ss.load_store(*paths, topology)


@pytest.fixture(scope="session")
def raw_tables(paths):
    """The three tables parsed independently of the package's own loader."""

    def read(path):
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
        return rows[0], [[int(cell) for cell in row] for row in rows[1:]]

    history = read(paths[0])
    stock_lead = read(paths[1])
    raw_lead = read(paths[2])
    return history, stock_lead, raw_lead


@pytest.fixture()
def tiny_rows():
    """A hand-written 3-member chain data set for targeted cases."""
    topology = ss.Topology(dc_count=1, agents_per_dc=(1,))
    history = [
        (1, 1, (10, -20, 30)),
        (2, 2, (0, 0, 0)),
        (3, 1, (10, -20, 31)),
    ]
    leads = [(1, (5, 7)), (2, (1, 1)), (3, (2, 3))]
    raws = [(1, 1, 4), (1, 2, 6), (2, 1, 9)]
    return topology, history, leads, raws


@pytest.fixture()
def tiny_store(tiny_rows):
    topology, history, leads, raws = tiny_rows
    return ss.HistoryStore.from_records(topology, history, leads, raws)
