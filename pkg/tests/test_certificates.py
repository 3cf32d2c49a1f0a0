"""Tests for the mixture family, event masses and KL certificates."""

import math
from fractions import Fraction

import pytest

from src.core.models import GibbsClassifier, TableHypothesis, ThresholdHypothesis
from src.pacbayes.divergence import kl_bernoulli
from src.pacbayes.priors import cover_prior, uniform_threshold_prior
from src.sensitivity.certificates import (
    EventMass,
    _closed_form_mass,
    _enumerated_mass,
    certify,
    default_repetitions,
    event_mass,
    family_average,
    kl_certificate,
    lemma3_family,
    premise_violations,
)
from src.utils.exceptions import DomainException

HALF = Fraction(1, 2)


def _mixed_prior(n):
    """Uniform thresholds with a little mass on an alternating table."""
    table = TableHypothesis(tuple(1 if x % 2 else -1 for x in range(1, n + 1)))
    return GibbsClassifier.mixture(
        [(uniform_threshold_prior(n), Fraction(9, 10)), (GibbsClassifier.point_mass(table), Fraction(1, 10))]
    )


class TestFamily:
    """Test Q_x and its premise."""

    def test_member_rates(self):
        family = lemma3_family(3, 0.25, 0.75)
        assert len(family) == 8
        rates = family[3].positive_rates(range(1, 9))
        assert rates[:3] == [Fraction(1, 4)] * 3
        assert rates[3:] == [Fraction(3, 4)] * 5

    def test_premise_holds(self):
        assert premise_violations(lemma3_family(4, 0.25, 0.75), 0.25, 0.75) == []

    def test_premise_broken(self):
        family = {3: uniform_threshold_prior(8)}
        violations = premise_violations(family, 0.25, 0.75)
        assert violations
        assert all(xhat == 3 for xhat, _, _ in violations)

    def test_family_average(self):
        average = family_average(lemma3_family(2, 0.25, 0.75))
        assert average.thresholds_only
        assert sum(average.weights) == 1
        with pytest.raises(DomainException):
            family_average({})

    def test_invalid_b(self):
        with pytest.raises(DomainException):
            lemma3_family(0, 0.25, 0.75)

    def test_default_repetitions(self):
        assert default_repetitions(8, 0.25, 0.75) == 33
        assert default_repetitions(1, 0.25, 0.75) == 16


class TestEventMass:
    """Test the three mass paths."""

    @pytest.mark.parametrize("xhat", [1, 3, 5, 7])
    def test_closed_form_matches_enumeration(self, xhat):
        prior = uniform_threshold_prior(8)
        assert _closed_form_mass(prior, xhat, 4, HALF) == pytest.approx(_enumerated_mass(prior, xhat, 4, HALF), abs=1e-12)

    @pytest.mark.parametrize("xhat", [1, 3, 5, 7])
    def test_closed_form_on_family_member(self, xhat):
        q = lemma3_family(3, 0.25, 0.75)[5]
        assert _closed_form_mass(q, xhat, 6, HALF) == pytest.approx(_enumerated_mass(q, xhat, 6, HALF), abs=1e-12)

    def test_method_selection(self):
        assert event_mass(uniform_threshold_prior(8), 3, 0.25, 0.75, 4).method == "closed-form"
        exact = event_mass(_mixed_prior(8), 3, 0.25, 0.75, 4)
        assert exact.method == "exact"
        assert exact.lower == exact.value == exact.upper

    def test_monte_carlo_interval(self):
        mass = event_mass(_mixed_prior(8), 3, 0.25, 0.75, 4, trials=2000, seed=5, enumeration_cap=0)
        assert mass.method == "monte-carlo"
        assert mass.trials == 2000
        assert mass.lower <= mass.value <= mass.upper
        exact = event_mass(_mixed_prior(8), 3, 0.25, 0.75, 4)
        assert mass.lower - 0.02 <= exact.value <= mass.upper + 0.02

    @pytest.mark.parametrize(
        "prior", [uniform_threshold_prior(8), cover_prior(8, 0.25), _mixed_prior(8)], ids=["uniform", "cover", "mixed"]
    )
    def test_events_partition_prior_mass(self, prior):
        total = math.fsum(event_mass(prior, x, 0.25, 0.75, 5).value for x in range(1, 8, 2))
        assert total <= 1 + 1e-9
        assert total == pytest.approx(1)

    def test_invalid_arguments(self):
        prior = uniform_threshold_prior(8)
        with pytest.raises(DomainException):
            event_mass(prior, 4, 0.25, 0.75, 4)
        with pytest.raises(DomainException):
            event_mass(prior, 3, 0.25, 0.75, 0)
        with pytest.raises(DomainException):
            event_mass(uniform_threshold_prior(6), 3, 0.25, 0.75, 4)


class TestCertify:
    def test_crossing_intervals_give_zero(self):
        q = EventMass(0.4, 0.3, 0.5, "monte-carlo", 100)
        p = EventMass(0.35, 0.3, 0.4, "monte-carlo", 100)
        assert certify(q, p, 10) == 0

    def test_separated_masses(self):
        q = EventMass(0.9, 0.9, 0.9, "exact")
        p = EventMass(0.1, 0.1, 0.1, "exact")
        assert certify(q, p, 4) == pytest.approx(kl_bernoulli(0.9, 0.1) / 4)


class TestKLCertificate:
    """Test the certified KL lower bounds."""

    def test_bounds_below_direct_kl(self):
        family = lemma3_family(4, 0.25, 0.75)
        report = kl_certificate(family, family_average(family), 0.25, 0.75)
        assert report.valid
        assert report.r == default_repetitions(4, 0.25, 0.75)
        assert [row.xhat for row in report.rows] == list(range(1, 16, 2))
        for row in report.rows:
            assert 0 <= row.certificate <= row.direct_kl + 1e-9
        assert report.total_prior_mass() == pytest.approx(1)

    def test_uniform_prior_certifies_something(self):
        family = lemma3_family(4, 0.25, 0.75)
        report = kl_certificate(family, uniform_threshold_prior(16), 0.25, 0.75)
        assert report.fraction_at_least(1e-6) > 0

    def test_prior_equal_to_posterior(self):
        """Test that P = Q_x leaves nothing to certify."""
        member = lemma3_family(3, 0.25, 0.75)[5]
        family = {x: member for x in range(1, 9)}
        report = kl_certificate(family, member, 0.25, 0.75, r=8)
        assert not report.valid
        assert all(row.certificate == 0 and row.direct_kl == pytest.approx(0) for row in report.rows)

    def test_to_dict(self):
        family = lemma3_family(2, 0.25, 0.75)
        data = kl_certificate(family, family_average(family), 0.25, 0.75, r=4).to_dict()
        assert data["r"] == 4
        assert len(data["rows"]) == 2
        assert data["rows"][0]["method"] == "closed-form/closed-form"

    def test_domain_mismatch(self):
        with pytest.raises(DomainException):
            kl_certificate(lemma3_family(2, 0.25, 0.75), uniform_threshold_prior(8), 0.25, 0.75)
        with pytest.raises(DomainException):
            kl_certificate({}, uniform_threshold_prior(8), 0.25, 0.75)

    @pytest.mark.integration
    def test_workers_do_not_change_rows(self):
        family = lemma3_family(3, 0.25, 0.75)
        serial = kl_certificate(family, _mixed_prior(8), 0.25, 0.75, r=6)
        parallel = kl_certificate(family, _mixed_prior(8), 0.25, 0.75, r=6, workers=2)
        assert [row.certificate for row in serial.rows] == [row.certificate for row in parallel.rows]
