"""LCPR rows shared by the validator and CLI tests"""


# (lower bound, upper bound) of every column, as written in the file
BOUNDS = {
    "substation": ("A", "C"),
    "timestamp_local": ("2022-01-01 00:00:00", "2024-06-30 23:00:00"),
    "connected_clients": ("9", "104"),
    "connected_smart_tstats": ("59", "1278"),
    "average_inside_temperature": ("16.21", "27.08"),
    "average_temperature_setpoint": ("9.31", "21.03"),
    "average_outside_temperature": ("-32.0", "35.2"),
    "average_solar_radiance": ("0", "961"),
    "average_relative_humidity": ("0", "100"),
    "average_snow_precipitation": ("0.0", "306.0"),
    "average_wind_speed": ("0", "15.68"),
    "date": ("2022-01-01", "2024-06-30"),
    "month": ("1", "12"),
    "day": ("1", "31"),
    "day_of_week": ("1", "7"),
    "hour": ("0", "23"),
    "challenge_type": ("None", "LCPR"),
    "challenge_flag": ("0", "1"),
    "pre_post_challenge_flag": ("0", "1"),
    "is_weekend": ("0", "1"),
    "is_holiday": ("0", "1"),
    "weekend_holiday": ("0", "1"),
    "total_energy_consumed": ("7.45", "32240.17"),
}

# one out-of-bound value per column, applied to the lower-bound row
MUTATIONS = {
    "substation": "D",
    "timestamp_local": "2022/01/01 00:00",
    "connected_clients": "8",
    "connected_smart_tstats": "1279",
    "average_inside_temperature": "27.09",
    "average_temperature_setpoint": "9.30",
    "average_outside_temperature": "-32.1",
    "average_solar_radiance": "961.5",
    "average_relative_humidity": "101",
    "average_snow_precipitation": "-0.1",
    "average_wind_speed": "15.69",
    "date": "2024-07-01",
    "month": "13",
    "day": "0",
    "day_of_week": "8",
    "hour": "24",
    "challenge_type": "DR",
    "challenge_flag": "2",
    "pre_post_challenge_flag": "-1",
    "is_weekend": "2",
    "is_holiday": "0.5",
    "weekend_holiday": "3",
    "total_energy_consumed": "7.44",
}

# a Sunday afternoon, internally consistent
CONSISTENT = {
    "substation": "B",
    "timestamp_local": "2023-03-05 14:00:00",
    "connected_clients": "50",
    "connected_smart_tstats": "600",
    "average_inside_temperature": "21.5",
    "average_temperature_setpoint": "20.0",
    "average_outside_temperature": "-5.2",
    "average_solar_radiance": "310",
    "average_relative_humidity": "64",
    "average_snow_precipitation": "1.5",
    "average_wind_speed": "4.2",
    "date": "2023-03-05",
    "month": "3",
    "day": "5",
    "day_of_week": "1",
    "hour": "14",
    "challenge_type": "None",
    "challenge_flag": "0",
    "pre_post_challenge_flag": "0",
    "is_weekend": "1",
    "is_holiday": "0",
    "weekend_holiday": "1",
    "total_energy_consumed": "812.4",
}


def write_rows(tmp_path, rows: list[dict], name: str = "lcpr.csv", columns=None):
    columns = columns or list(BOUNDS)
    lines = [",".join(columns)] + [",".join(row[c] for c in columns) for row in rows]
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def boundary_rows() -> list[dict]:
    return [{c: bounds[0] for c, bounds in BOUNDS.items()}, {c: bounds[1] for c, bounds in BOUNDS.items()}]
