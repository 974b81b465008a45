"""
Tests for the package metadata.
"""
import re
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

# distribution name -> top-level module
IMPORT_NAMES = {
    "pydantic": "pydantic",
    "pyyaml": "yaml",
    "sortedcontainers": "sortedcontainers",
    "python-dotenv": "dotenv",
}


def runtime_dependencies():
    text = (ROOT / "pyproject.toml").read_text()
    block = re.search(r"^dependencies = \[(.*?)^\]", text, re.S | re.M).group(1)
    names = []
    for item in block.split(","):
        item = item.strip().strip('"')
        if item:
            names.append(re.match(r"[A-Za-z0-9_.-]+", item).group(0).lower())
    return names


class TestRuntimeDependencies:
    """Test that declared runtime dependencies are the ones the package imports."""

    def test_known_dependencies(self):
        """Test that every declared distribution maps to a module."""
        assert sorted(runtime_dependencies()) == sorted(IMPORT_NAMES)

    def test_every_dependency_imported(self):
        """Test that each declared distribution is imported somewhere in the package."""
        sources = "\n".join(
            path.read_text() for path in (ROOT / "proofmin").rglob("*.py")
        )
        for name in runtime_dependencies():
            module = IMPORT_NAMES[name]
            assert re.search(rf"^\s*(import|from) {module}\b", sources, re.M), name
