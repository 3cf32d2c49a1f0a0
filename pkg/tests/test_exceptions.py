"""Tests for custom exception classes and error handling."""

from src.utils.exceptions import (
    BudgetExhaustedException,
    ConfigurationException,
    DomainException,
    LabException,
    LearnerException,
    RealizabilityException,
    ReportException,
    ValidationFailure,
)


class TestLabException:
    """Test the base LabException class."""

    def test_basic_exception_creation(self):
        """Test creating a basic LabException."""
        exc = LabException("Test error")
        assert str(exc) == "Test error"
        assert exc.recovery_suggestions == []
        assert exc.error_code is None
        assert exc.context == {}
        assert not exc.can_recover()

    def test_exception_with_recovery_suggestions(self):
        """Test LabException with recovery suggestions."""
        suggestions = ["Try again", "Check input"]
        exc = LabException("Test error", recovery_suggestions=suggestions)
        assert exc.get_recovery_suggestions() == suggestions
        assert exc.can_recover()

    def test_exception_with_error_code_and_context(self):
        """Test LabException with error code and context."""
        context = {"key": "value", "number": 42}
        exc = LabException("Test error", error_code="TEST_ERROR", context=context)
        assert exc.error_code == "TEST_ERROR"
        assert exc.context == context

    def test_user_friendly_message(self):
        exc = LabException("Technical error message")
        assert exc.get_user_friendly_message() == "Technical error message"


class TestDomainException:
    """Test the DomainException class."""

    def test_domain_with_argument(self):
        """Test that the offending argument is named in the suggestions and context."""
        exc = DomainException("Point 12 lies outside the domain", argument="x", value=12)
        assert exc.error_code == "DOMAIN_ERROR"
        assert exc.argument == "x"
        assert exc.value == 12
        assert exc.context["value"] == "12"
        assert any("'x'" in s for s in exc.get_recovery_suggestions())

    def test_domain_without_argument(self):
        exc = DomainException("Bad input")
        assert exc.argument is None
        assert exc.context["value"] is None
        assert exc.can_recover()


class TestRealizabilityException:
    """Test the RealizabilityException class."""

    def test_message_quotes_sample(self):
        exc = RealizabilityException("(1,+);(2,-)", learner="erm")
        assert "(1,+);(2,-)" in str(exc)
        assert "not realizable" in str(exc)
        assert exc.error_code == "REALIZABILITY_ERROR"
        assert exc.learner == "erm"
        assert any("erm:cover" in s for s in exc.get_recovery_suggestions())


class TestLearnerException:
    """Test the LearnerException class."""

    def test_lists_available_kinds(self):
        """Test that available learner kinds appear in the suggestions."""
        exc = LearnerException("Unknown learner kind 'foo'", spec="foo", available=["exp", "erm"])
        assert exc.spec == "foo"
        assert exc.available == ["exp", "erm"]
        assert "exp, erm" in exc.get_recovery_suggestions()[0]

    def test_without_available(self):
        exc = LearnerException("Bad spec")
        assert exc.available == []
        assert len(exc.get_recovery_suggestions()) == 1


class TestConfigurationException:
    """Test the ConfigurationException class."""

    def test_configuration_exception(self):
        """Test configuration exception formatting."""
        exc = ConfigurationException("experiment", "unknown fields ['foo']", config_file="run.json")
        assert str(exc) == "Configuration error in experiment: unknown fields ['foo']"
        assert exc.config_type == "experiment"
        assert exc.config_file == "run.json"
        assert exc.error_code == "CONFIG_ERROR"
        assert exc.can_recover()


class TestValidationFailure:
    """Test the ValidationFailure class."""

    def test_carries_witness(self):
        exc = ValidationFailure("check-homogeneity", "worst violation 0.2", witness=("S", 3))
        assert "check-homogeneity" in str(exc)
        assert exc.check == "check-homogeneity"
        assert exc.witness == ("S", 3)
        assert exc.error_code == "VALIDATION_FAILURE"


class TestBudgetExhaustedException:
    """Test the BudgetExhaustedException class."""

    def test_budget_fields(self):
        """Test that budget and explored counts are kept."""
        exc = BudgetExhaustedException("find-homogeneous-subset", budget=100, explored=100)
        assert "100" in str(exc)
        assert exc.search == "find-homogeneous-subset"
        assert exc.budget == 100
        assert exc.explored == 100
        assert exc.context == {"search": "find-homogeneous-subset", "budget": 100, "explored": 100}
        assert "not a disproof" in exc.get_recovery_suggestions()[0]


class TestReportException:
    def test_report_exception(self):
        exc = ReportException("/nope/out.csv", "Permission denied")
        assert "/nope/out.csv" in str(exc)
        assert exc.reason == "Permission denied"
        assert exc.error_code == "REPORT_ERROR"


class TestExceptionHierarchy:
    """Test exception inheritance hierarchy."""

    def test_all_inherit_from_lab_exception(self):
        """Test that all custom exceptions inherit from LabException."""
        exceptions = [
            DomainException("x"),
            RealizabilityException("(1,+)"),
            LearnerException("x"),
            ConfigurationException("t", "m"),
            ValidationFailure("c", "m"),
            BudgetExhaustedException("s", 1, 1),
            ReportException("p", "r"),
        ]
        for exc in exceptions:
            assert isinstance(exc, LabException)
            assert isinstance(exc, Exception)
