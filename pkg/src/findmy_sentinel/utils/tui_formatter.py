"""Terminal table formatting for comparison rows and fleet summaries.

Produces ASCII (or Unicode) box-drawn tables sized to their content.
"""

from collections.abc import Sequence
from dataclasses import dataclass


@dataclass
class TUIConfig:
    """Configuration for table formatting."""

    max_cell_len: int = 40

    # Use ASCII instead of Unicode box drawing
    ascii_mode: bool = True

    # Box drawing characters (set by __post_init__ based on ascii_mode)
    BOX_TL: str = "+"
    BOX_TR: str = "+"
    BOX_BL: str = "+"
    BOX_BR: str = "+"
    BOX_H: str = "-"
    BOX_V: str = "|"
    BOX_LT: str = "+"
    BOX_RT: str = "+"
    BOX_TT: str = "+"
    BOX_BT: str = "+"
    BOX_X: str = "+"

    def __post_init__(self) -> None:
        if not self.ascii_mode:
            self.BOX_TL = "┌"
            self.BOX_TR = "┐"
            self.BOX_BL = "└"
            self.BOX_BR = "┘"
            self.BOX_H = "─"
            self.BOX_V = "│"
            self.BOX_LT = "├"
            self.BOX_RT = "┤"
            self.BOX_TT = "┬"
            self.BOX_BT = "┴"
            self.BOX_X = "┼"


def format_duration(seconds: float | None) -> str:
    """Render seconds as ``4h 18m 11s`` / ``35m 20s``; ``-`` for no value."""
    if seconds is None:
        return "-"
    total = int(round(seconds))
    hours, rest = divmod(total, 3600)
    minutes, secs = divmod(rest, 60)
    if hours:
        return f"{hours}h {minutes}m {secs}s"
    return f"{minutes}m {secs}s"


class TUIFormatter:
    """Formats tabular results as box-drawn text.

    Example:
        formatter = TUIFormatter()
        print(formatter.format_table(["Tracker", "Time"], [["AirTag", "35m 20s"]]))
    """

    def __init__(self, config: TUIConfig | None = None):
        self.config = config or TUIConfig()

    def format_table(
        self,
        headers: Sequence[str],
        rows: Sequence[Sequence[str]],
        title: str | None = None,
    ) -> str:
        """Format rows under a header line.

        An empty ``rows`` still renders the header, so the column layout is
        visible even when nothing was produced.
        """
        cells = [[self._truncate(str(v)) for v in row] for row in rows]
        widths = [len(h) + 2 for h in headers]
        for row in cells:
            for i, value in enumerate(row):
                widths[i] = max(widths[i], len(value) + 2)

        lines: list[str] = []
        if title:
            inner = sum(widths) + len(widths) - 1
            lines.append(self._box_top(inner))
            lines.append(self._box_row(f" {title}", inner))
            lines.append(self._table_separator(widths, "top"))
        else:
            lines.append(self._table_separator(widths, "first"))
        lines.append(self._table_row(headers, widths))
        lines.append(self._table_separator(widths, "middle"))
        lines.extend(self._table_row(row, widths) for row in cells)
        lines.append(self._table_separator(widths, "bottom"))
        return "\n".join(lines)

    def format_key_values(self, pairs: Sequence[tuple[str, str]], title: str) -> str:
        """Two-column table for summary values."""
        return self.format_table(["Metric", "Value"], [list(p) for p in pairs], title=title)

    # =========================================================================
    # Private Helper Methods - Box Drawing
    # =========================================================================

    def _box_top(self, width: int) -> str:
        c = self.config
        return f"{c.BOX_TL}{c.BOX_H * width}{c.BOX_TR}"

    def _box_row(self, content: str, width: int) -> str:
        c = self.config
        if len(content) > width:
            content = content[: width - 3] + "..."
        return f"{c.BOX_V}{content.ljust(width)}{c.BOX_V}"

    def _table_separator(self, col_widths: Sequence[int], position: str) -> str:
        """Separator with junctions; ``position`` is first, top, middle or bottom."""
        c = self.config
        if position == "first":
            left, mid, right = c.BOX_TL, c.BOX_TT, c.BOX_TR
        elif position == "top":
            left, mid, right = c.BOX_LT, c.BOX_TT, c.BOX_RT
        elif position == "middle":
            left, mid, right = c.BOX_LT, c.BOX_X, c.BOX_RT
        else:  # bottom
            left, mid, right = c.BOX_BL, c.BOX_BT, c.BOX_BR
        return left + mid.join(c.BOX_H * w for w in col_widths) + right

    def _table_row(self, values: Sequence[str], col_widths: Sequence[int]) -> str:
        c = self.config
        cells = [f" {value}".ljust(width) for value, width in zip(values, col_widths)]
        return c.BOX_V + c.BOX_V.join(cells) + c.BOX_V

    def _truncate(self, text: str) -> str:
        limit = self.config.max_cell_len
        if limit > 0 and len(text) > limit:
            return text[: limit - 3] + "..."
        return text
