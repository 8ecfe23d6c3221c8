import time
from functools import cached_property, lru_cache

import pytest

from nichols.cartanweyl import Bicharacter, root_system
from nichols.cli import example_names, load_example
from nichols.quotient import Nichols
from nichols.relations import emit_relations

ACCEPTANCE: list[tuple[int, str, bool, str, float]] = []


def record(number: int, title: str, ok: bool, detail: str = "", seconds: float = 0.0) -> None:
    ACCEPTANCE.append((number, title, ok, detail, seconds))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail, seconds in sorted(ACCEPTANCE):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({seconds:.1f} s)"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)


class Case:
    """A bundled example; the quotient and the relations are built on first use."""

    def __init__(self, name: str):
        spec = load_example(name)
        self.name = name
        self.chi: Bicharacter = spec.chi
        self.cap = spec.max_degree or 8
        self.rs = root_system(spec.chi, max_objects=spec.max_objects, max_height=spec.max_root_height)

    @cached_property
    def nq(self) -> Nichols:
        return Nichols(self.chi, max_degree=self.cap)

    @cached_property
    def relations(self) -> list:
        return emit_relations(self.chi, self.rs, self.nq)


@lru_cache(maxsize=None)
def example_case(name: str) -> Case:
    return Case(name)


@pytest.fixture(scope="session")
def examples():
    return example_names()


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start
