"""
Tests for search configuration presets and preset files.
"""
import json
import os

import pytest
import yaml
from pydantic import ValidationError

from proofmin.core.config import OrderDirection, SearchConfig, SearchMode
from proofmin.core.exceptions import ConfigurationError


class TestSearchConfigDefaults:
    """Test default values and validation."""

    def test_defaults(self):
        """Test the Optimal defaults."""
        config = SearchConfig()
        assert config.mode is SearchMode.OPTIMAL
        assert config.length_order is OrderDirection.DESCENDING
        assert config.frequency_order is OrderDirection.DESCENDING
        assert config.m_switch == 28
        assert config.cache_lifetime == 100_000
        assert config.queue_limit is None
        assert config.branch_width is None
        assert config.prune_by_bound and config.prune_by_dominance

    @pytest.mark.parametrize("field", ["queue_limit", "branch_width", "node_limit",
                                       "time_limit", "memory_cap_mb"])
    def test_non_positive_limits_rejected(self, field):
        """Test that limits must be positive."""
        with pytest.raises(ValidationError):
            SearchConfig(**{field: 0})

    def test_negative_m_switch_rejected(self):
        """Test the non-negative counters."""
        with pytest.raises(ValidationError):
            SearchConfig(m_switch=-1)

    def test_unknown_field_rejected(self):
        """Test that typos in field names are caught."""
        with pytest.raises(ValidationError):
            SearchConfig(queue_limt=5)


class TestPresets:
    """Test the named search presets."""

    def test_optimal(self):
        """Test the Optimal preset."""
        config = SearchConfig.for_mode("optimal")
        assert config.length_order is OrderDirection.DESCENDING
        assert config.dynamic_seeding

    def test_short(self):
        """Test that Short orders shortest clauses first."""
        config = SearchConfig.for_mode(SearchMode.SHORT)
        assert config.mode is SearchMode.SHORT
        assert config.length_order is OrderDirection.ASCENDING
        assert config.frequency_order is OrderDirection.DESCENDING
        assert config.queue_limit is None

    def test_competition(self):
        """Test the competition preset limits and disabled pruning."""
        config = SearchConfig.for_mode("competition")
        assert config.length_order is OrderDirection.ASCENDING
        assert config.queue_limit == 10_000
        assert config.branch_width == 10
        assert not config.prune_by_bound
        assert not config.prune_by_dominance
        assert not config.dynamic_seeding

    def test_overrides(self):
        """Test that overrides win and None overrides are ignored."""
        config = SearchConfig.for_mode("competition", queue_limit=50, branch_width=None)
        assert config.queue_limit == 50
        assert config.branch_width == 10

    def test_unknown_mode(self):
        """Test an unknown preset name."""
        with pytest.raises(ValueError):
            SearchConfig.for_mode("fastest")

    def test_with_overrides_validates(self):
        """Test that copies are validated."""
        config = SearchConfig().with_overrides(time_limit=2.5, seed=None)
        assert config.time_limit == 2.5
        assert config.seed == 0
        with pytest.raises(ValidationError):
            config.with_overrides(node_limit=-3)


class TestConfigFiles:
    """Test loading and saving preset files."""

    def test_yaml_round_trip(self, temp_dir):
        """Test saving and loading YAML."""
        path = os.path.join(temp_dir, "search.yaml")
        original = SearchConfig.for_mode("short", time_limit=3.0, seed=9)
        original.save(path)
        assert SearchConfig.from_file(path) == original

    def test_json_round_trip(self, temp_dir):
        """Test saving and loading JSON."""
        path = os.path.join(temp_dir, "search.json")
        original = SearchConfig.for_mode("competition")
        original.save(path)
        with open(path) as f:
            assert json.load(f)["mode"] == "competition"
        assert SearchConfig.from_file(path) == original

    def test_mode_key_selects_preset(self, temp_dir):
        """Test that a partial file starts from its preset."""
        path = os.path.join(temp_dir, "partial.yaml")
        with open(path, "w") as f:
            yaml.dump({"mode": "competition", "queue_limit": 20}, f)
        config = SearchConfig.from_file(path)
        assert config.branch_width == 10
        assert config.queue_limit == 20

    def test_missing_file(self, temp_dir):
        """Test a path that does not exist."""
        with pytest.raises(ConfigurationError):
            SearchConfig.from_file(os.path.join(temp_dir, "absent.yaml"))

    def test_invalid_values(self, temp_dir):
        """Test that validation errors become configuration errors."""
        path = os.path.join(temp_dir, "bad.json")
        with open(path, "w") as f:
            json.dump({"branch_width": 0}, f)
        with pytest.raises(ConfigurationError):
            SearchConfig.from_file(path)

    def test_unparseable(self, temp_dir):
        """Test malformed YAML."""
        path = os.path.join(temp_dir, "broken.yaml")
        with open(path, "w") as f:
            f.write("mode: [unclosed\n")
        with pytest.raises(ConfigurationError):
            SearchConfig.from_file(path)

    def test_non_mapping(self, temp_dir):
        """Test a file holding a list."""
        path = os.path.join(temp_dir, "list.yaml")
        with open(path, "w") as f:
            yaml.dump([1, 2], f)
        with pytest.raises(ConfigurationError):
            SearchConfig.from_file(path)


class TestShippedPresets:
    """Test the preset files under config/."""

    CONFIG_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "config")

    @pytest.mark.parametrize("name,mode", [
        ("optimal.yaml", SearchMode.OPTIMAL),
        ("short.yaml", SearchMode.SHORT),
        ("competition.json", SearchMode.COMPETITION),
    ])
    def test_loads(self, name, mode):
        """Test that each shipped preset loads with its mode."""
        config = SearchConfig.from_file(os.path.join(self.CONFIG_DIR, name))
        assert config.mode is mode

    def test_competition_keeps_preset_pruning(self):
        """Test that the file inherits the preset's pruning switches."""
        config = SearchConfig.from_file(os.path.join(self.CONFIG_DIR, "competition.json"))
        assert not config.prune_by_bound
        assert not config.dynamic_seeding
        assert config.time_limit == 300
