"""Tests for TUI formatter."""

import pytest

from findmy_sentinel.utils.tui_formatter import TUIConfig, TUIFormatter, format_duration


class TestTUIConfig:
    """Tests for TUIConfig dataclass."""

    def test_default_values(self) -> None:
        config = TUIConfig()

        assert config.ascii_mode is True
        assert config.max_cell_len == 40
        assert config.BOX_TL == "+"

    def test_unicode_mode(self) -> None:
        """Test that unicode mode switches the box characters."""
        config = TUIConfig(ascii_mode=False)

        assert config.BOX_TL == "┌"
        assert config.BOX_V == "│"


class TestFormatTable:
    def test_layout(self) -> None:
        text = TUIFormatter().format_table(["Tracker", "Time"], [["AirTag", "35m 20s"]])
        lines = text.splitlines()

        assert lines[0] == "+---------+---------+"
        assert lines[1] == "| Tracker | Time    |"
        assert lines[3] == "| AirTag  | 35m 20s |"
        assert len({len(line) for line in lines}) == 1

    def test_title(self) -> None:
        text = TUIFormatter().format_table(["A"], [["x"]], title="RESULTS")

        assert "RESULTS" in text.splitlines()[1]

    def test_long_cells_truncated(self) -> None:
        formatter = TUIFormatter(TUIConfig(max_cell_len=10))
        text = formatter.format_table(["Name"], [["x" * 30]])

        assert "xxxxxxx..." in text
        assert "x" * 11 not in text

    def test_key_values(self) -> None:
        text = TUIFormatter().format_key_values([("Users", "500")], title="FLEET REPORT")

        assert "Metric" in text and "Users" in text and "500" in text


class TestFormatDuration:
    @pytest.mark.parametrize(
        ("seconds", "expected"),
        [
            (None, "-"),
            (0, "0m 0s"),
            (2120, "35m 20s"),
            (15491, "4h 18m 11s"),
            (6300, "1h 45m 0s"),
        ],
    )
    def test_format(self, seconds, expected) -> None:
        assert format_duration(seconds) == expected
