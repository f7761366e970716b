"""Integration tests for the HTTP API."""

import pytest
from httpx import AsyncClient

from findmy_sentinel import __version__
from findmy_sentinel.simulation import derive_key

KEY = derive_key(1, 0)

pytestmark = pytest.mark.integration


class TestServerEndpoints:
    async def test_health(self, client: AsyncClient) -> None:
        response = await client.get("/api/v1/health")

        assert response.status_code == 200
        assert response.json() == {"status": "healthy", "version": __version__}

    async def test_info(self, client: AsyncClient) -> None:
        response = await client.get("/api/v1/info")

        data = response.json()
        assert data["name"] == "FindMy Sentinel"
        assert data["scenarios"] == ["pocket", "backpack", "car"]
        assert "airguard" in data["engines"]


class TestCodecEndpoints:
    async def test_encode_then_decode(self, client: AsyncClient) -> None:
        encoded = await client.post(
            "/api/v1/codec/encode", json={"public_key": KEY.hex(), "status": 0x08, "hint": 0}
        )
        assert encoded.status_code == 200
        frame = encoded.json()
        assert frame["category"] == "hawkeye"
        assert frame["public_key"] == KEY.hex()

        hexdump = bytes.fromhex(frame["address"].replace(":", "") + frame["payload"]).hex(" ")
        decoded = await client.post("/api/v1/codec/decode", json={"hexdump": hexdump})
        assert decoded.status_code == 200
        assert decoded.json()["frames"][0] == frame

    async def test_short_key_is_rejected(self, client: AsyncClient) -> None:
        response = await client.post("/api/v1/codec/encode", json={"public_key": KEY[:20].hex()})

        assert response.status_code == 422
        body = response.json()
        assert body["success"] is False
        assert body["error"]["code"] == "KEY_LENGTH"
        assert "request_id" in body["meta"]

    async def test_bad_hexdump(self, client: AsyncClient) -> None:
        response = await client.post("/api/v1/codec/decode", json={"hexdump": "C1 02"})

        assert response.status_code == 422
        assert response.json()["error"]["details"]["line"] == 1

    async def test_sound_catalog(self, client: AsyncClient) -> None:
        play = await client.get("/api/v1/codec/sound/accessory_or_airpods/stop")
        assert play.json()["value"] == "010103"

        stop = await client.get("/api/v1/codec/sound/airtag/stop")
        assert stop.status_code == 422
        assert stop.json()["error"]["code"] == "UNSUPPORTED_SOUND_COMMAND"


class TestScenarioEndpoints:
    async def test_list(self, client: AsyncClient) -> None:
        response = await client.get("/api/v1/scenarios")

        data = response.json()
        assert data["total"] == 3
        assert data["scenarios"][0]["trackers"] == ["AirTag", "Chipolo", "OpenHaystack"]

    async def test_unknown_scenario(self, client: AsyncClient) -> None:
        response = await client.post("/api/v1/scenarios/run", json={"name": "bicycle"})

        assert response.status_code == 404
        assert response.json()["error"]["code"] == "UNKNOWN_SCENARIO"

    async def test_missing_name(self, client: AsyncClient) -> None:
        response = await client.post("/api/v1/scenarios/run", json={})

        assert response.status_code == 422
        assert response.json()["error"]["code"] == "SCENARIO_CONFIG"

    async def test_inline_scenario(self, client: AsyncClient, export_store) -> None:
        document = {
            "name": "desk",
            "seed": 3,
            "victim_trace": {
                "samples": [
                    {"t": 0, "lat": 49.87, "lon": 8.65},
                    {"t": 3600, "lat": 49.87, "lon": 8.65},
                ]
            },
            "accessories": [{"id": "tag", "kind": "accessory"}],
        }
        response = await client.post(
            "/api/v1/scenarios/run",
            json={"scenario": document, "engine": "airguard", "export": True},
        )

        assert response.status_code == 200
        data = response.json()
        assert data["scenario"] == "desk"
        # A tracker that never moves is not reported
        assert data["rows"] == [
            {
                "position": "desk",
                "tracker": "tag",
                "kind": "accessory",
                "engine": "airguard",
                "time_to_notification_s": None,
                "locations": None,
            }
        ]
        assert data["export_dir"].startswith(str(export_store.base_dir))

    async def test_invalid_inline_scenario(self, client: AsyncClient) -> None:
        response = await client.post(
            "/api/v1/scenarios/run", json={"scenario": {"name": "x", "seed": 1}}
        )

        assert response.status_code == 422
        fields = {e["field"] for e in response.json()["error"]["details"]["errors"]}
        assert {"victim_trace", "accessories"} <= fields


class TestAnalyticsEndpoints:
    async def test_sweep(self, client: AsyncClient) -> None:
        response = await client.post("/api/v1/analytics/sweep", json={"durations_s": [2, 8]})

        data = response.json()
        assert data["durations_s"] == [2.0, 8.0]
        assert data["mean_discovered"][1][0] == 8.0

    @pytest.mark.parametrize("durations", [[1e9], [], [0], [-1.0]])
    async def test_sweep_rejects_unbounded_durations(self, client: AsyncClient, durations) -> None:
        response = await client.post("/api/v1/analytics/sweep", json={"durations_s": durations})

        assert response.status_code == 422
        assert response.json()["detail"][0]["loc"][:2] == ["body", "durations_s"]

    async def test_synthetic_fleet(self, client: AsyncClient) -> None:
        response = await client.post(
            "/api/v1/analytics/fleet", json={"synthetic_users": 20, "synthetic_days": 21}
        )

        data = response.json()
        assert data["users"] == 20
        assert set(data["false_alarms"]) == {"accessory", "apple_device"}

    async def test_posted_events(self, client: AsyncClient) -> None:
        events = [
            {"user_pseudo_id": "a1", "at": 1, "category": "durian", "event": "sighting", "rssi": -70},
            {"user_pseudo_id": "a1", "at": 2, "category": "durian", "event": "notification", "span_s": 60},
        ]
        response = await client.post("/api/v1/analytics/fleet", json={"events": events})

        data = response.json()
        assert data["users"] == 1
        assert data["notifications_per_user"] == {"1": 1}

    async def test_too_many_notifiers(self, client: AsyncClient) -> None:
        response = await client.post("/api/v1/analytics/fleet", json={"synthetic_users": 5})

        assert response.status_code == 400
        assert response.json()["error"]["code"] == "INVALID_REQUEST"
