"""Shared pytest fixtures and configuration."""

import pytest

from src.core.literals import parse_sample
from src.learners import ERMLearner, ExpGibbsLearner, LearnerFactory


@pytest.fixture(autouse=True)
def restore_learner_registry():
    """Save and restore the LearnerFactory registry around every test.

    Prevents tests that call clear_registry() or register custom kinds from
    polluting the global registry state for subsequent tests.
    """
    saved = LearnerFactory._builders.copy()
    yield
    LearnerFactory._builders = saved


@pytest.fixture
def exp_learner():
    return ExpGibbsLearner(beta=1.0)


@pytest.fixture
def erm_learner():
    return ERMLearner()


@pytest.fixture
def small_sample():
    """A realizable sample on {1..10} with two negatives and one positive."""
    return parse_sample("(1,-);(5,+);(3,-)", 10)
