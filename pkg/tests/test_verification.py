"""
Integration tests for the verification suites
"""
import pytest
import yaml

from app.services.verification_service import VerificationService, load_suites
from semigroups.errors import BadParameter

pytestmark = pytest.mark.integration


@pytest.fixture(scope="module")
def service():
    return VerificationService()


class TestCatalogue:
    """Test suite for loading and resolving suites"""

    def test_all_suites_have_runners(self, service):
        """Test every catalogued suite can run"""
        assert sorted(service.resolve("all")) == sorted(service.suites)

    def test_groups(self, service):
        """Test the lemma group"""
        assert service.resolve("lemmas") == [
            "lemma1", "strength-equivalence", "symmetric", "pseudo-symmetric", "arf",
        ]

    def test_unknown(self, service):
        """Test unknown names list the choices"""
        with pytest.raises(BadParameter) as exc_info:
            service.resolve("nope")
        assert "bounds" in str(exc_info.value)

    def test_missing_catalogue(self, tmp_path):
        """Test a missing catalogue file"""
        with pytest.raises(FileNotFoundError):
            load_suites(tmp_path / "suites.yaml")

    def test_custom_catalogue(self, tmp_path):
        """Test max_genus defaults come from the catalogue"""
        path = tmp_path / "suites.yaml"
        path.write_text(yaml.safe_dump({"suites": {"bounds": {"max_genus": 5}}}), encoding="utf-8")
        results = VerificationService(path).run("bounds")
        assert [(r.name, r.max_genus, r.passed) for r in results] == [("bounds", 5, True)]

    def test_negative_genus(self, service):
        """Test a negative genus limit"""
        with pytest.raises(BadParameter):
            service.run("bounds", -1)


class TestSuites:
    """Test suite for the individual property suites at reduced genus"""

    @pytest.mark.parametrize("name", [
        "core-identities",
        "lemma1",
        "strength-equivalence",
        "symmetric",
        "pseudo-symmetric",
        "arf",
        "tree-a",
        "bounds",
    ])
    def test_passes(self, service, name):
        """Test the suite passes to genus 6"""
        (result,) = service.run(name, 6)
        assert result.passed, result.failures
        assert result.checked > 0

    def test_chains(self, service):
        """Test the chain suite to genus 6"""
        (result,) = service.run("chains", 6)
        assert result.passed, result.failures

    def test_histograms_need_a_stabilized_reading(self, service):
        """Test the suite fails while no reading has stabilized, and still reports the literal excess"""
        (result,) = service.run("histograms", 5)
        assert not result.passed
        assert any("no reading agrees" in failure for failure in result.failures)
        assert any(note.startswith("g=4: nodes with [2] strong generators") for note in result.notes)
        assert not any("floor(g/2)" in failure for failure in result.failures)
        assert "S_g/W_g trend needs genus >= 20" in result.notes

    @pytest.mark.slow
    def test_histograms_at_catalogue_genus(self, service):
        """Test the shifted reading reproduces both known prefixes by genus 22"""
        (result,) = service.run("histograms")
        assert result.max_genus == 22
        assert result.passed, result.failures
        assert any(
            note.startswith("o diagonal reproduced under") and "exclude-ordinary, shifted" in note
            for note in result.notes
        )
        assert any("o diagonal (exclude-ordinary, shifted): stabilized prefix [1, 2, 3" in note for note in result.notes)

    @pytest.mark.slow
    @pytest.mark.parametrize("name,genus", [
        ("lemma1", 16),
        ("strength-equivalence", 16),
        ("symmetric", 16),
        ("pseudo-symmetric", 16),
        ("arf", 16),
        ("chains", 13),
        ("bounds", 26),
    ])
    def test_catalogue_genus(self, service, name, genus):
        """Test the suite at its catalogued genus"""
        (result,) = service.run(name)
        assert result.max_genus == genus
        assert result.passed, result.failures

    @pytest.mark.slow
    def test_reference_enumerator_to_genus_14(self, service):
        """Test --max-genus 14 compares the walker with the reference enumerator at every genus"""
        (result,) = service.run("lemma1", 14)
        assert result.passed, result.failures
        assert not any(note.startswith("reference enumerator compared") for note in result.notes)
        (result,) = service.run("lemma1")
        assert "reference enumerator compared to genus 14" in result.notes
