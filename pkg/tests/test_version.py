"""Test version information."""

# Import local modules
import numrec


def test_version():
    """Test that version is a string."""
    assert isinstance(numrec.__version__, str)
    assert numrec.__version__ != ""
