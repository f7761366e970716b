"""Tests for MCP server tools."""

from findmy_sentinel.mcp_server import mcp


class TestMCPServerRegistration:
    """Tests for MCP tool registration."""

    def test_tools_registered(self):
        """Test that all expected tools are registered."""
        tools = set(mcp._tool_manager._tools.keys())

        # Codec tools
        assert {"findmy_decode", "findmy_encode", "findmy_sound"} <= tools

        # Scenario tools
        assert {"scenario_list", "scenario_run", "ios_replay"} <= tools

        # Analytics tools
        assert {"scan_sweep", "fleet_analytics"} <= tools

    def test_server_name(self):
        assert mcp.name == "findmy-sentinel"
