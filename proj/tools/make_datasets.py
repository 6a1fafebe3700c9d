# Copyright 2026 The pathforge Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the bundled desk-scale and toy datasets (dataset.json + profiles.csv).

Public process data is copied from the supplementary tables. Entries whose
source is proprietary carry "provenance": "placeholder".
"""

import argparse
import json
import math
import pathlib
import random

HOURS = 8760
YEARS = [2020, 2025, 2030, 2035, 2040, 2045]
PH = "placeholder"

# Net emission targets, Mt/yr, normalized to the 2016 value below.
TARGETS = {2016: 742, 2020: 613, 2025: 483, 2030: 354, 2035: 236, 2040: 118, 2045: 0}

# Annual demands, Mt/yr.
CHEMICALS = {
    "ammonia": 2.56,
    "methanol": 1.40,
    "ethylene": 4.52,
    "propylene": 3.44,
    "benzene": 1.51,
    "toluene": 0.55,
    "xylene": 0.40,
}
# C, H, O, N atoms per molecule.
FORMULA = {
    "ammonia": (0, 3, 0, 1),
    "methanol": (1, 4, 1, 0),
    "ethylene": (2, 4, 0, 0),
    "propylene": (3, 6, 0, 0),
    "benzene": (6, 6, 0, 0),
    "toluene": (7, 8, 0, 0),
    "xylene": (8, 10, 0, 0),
}

ELECTRICITY_TWH = 512.6
HT_HEAT_TWH = 214.0

GAS_PRICE = 0.025       # k€/MWh
GAS_UPSTREAM = 0.03     # t/MWh
GAS_COMBUSTION = 0.2    # t/MWh


def carbon_fraction(c, h, o, n):
    return 12.0 * c / (12.0 * c + 1.0 * h + 16.0 * o + 14.0 * n)


def product(pid, unit="tonne", **kw):
    d = {"id": pid, "unit": unit}
    d.update(kw)
    return d


def process(pid, ref, flows, **kw):
    d = {"id": pid, "reference_product": ref, "flows": dict({ref: 1}, **flows)}
    d.update(kw)
    return d


def by_year(values):
    return {str(y): v for y, v in zip([2016] + YEARS, values)}


def profiles(seed):
    rng = random.Random(seed)
    wind, solar, load = [], [], []
    level = 0.35
    for h in range(HOURS):
        day = h // 24
        hour = h % 24
        season = math.cos(2 * math.pi * (day - 172) / 365.0)
        level += 0.08 * (0.32 + 0.1 * season - level) + rng.gauss(0.0, 0.06)
        level = min(1.0, max(0.0, level))
        wind.append(level)
        elev = math.sin(math.pi * (hour - 6) / 12.0) if 6 <= hour <= 18 else 0.0
        cloud = 0.55 + 0.45 * rng.random()
        solar.append(max(0.0, elev * (0.55 - 0.3 * season) * cloud))
        load.append(1.0 + 0.12 * season + 0.1 * math.sin(math.pi * (hour - 7) / 12.0) * (hour >= 7)
                    + 0.02 * rng.gauss(0.0, 1.0))
    mean = sum(load) / HOURS
    load = [v / mean for v in load]
    return {"wind": wind, "solar": solar, "electricity_load": load}


def build():
    products = [
        product("power", "MWh", role="electricity", import_price=0.12, import_emissions=0.0,
                provenance=PH, sector="power"),
        product("natural_gas", "MWh", import_price=GAS_PRICE, import_emissions=GAS_UPSTREAM,
                provenance=PH),
        product("naphtha", import_price=0.44, import_emissions=0.35, provenance=PH),
        product("h2", role="hydrogen", import_price=0.0, import_emissions=0.0),
        product("co2", "tCO2", role="co2_captured"),
        product("co2_ps", "tCO2", role="co2_point_source"),
        product("nitrogen"),
        product("lt_heat", "MWh"),
        product("mt_heat", "MWh"),
        product("ht_heat", "MWh", sector="ht_heat"),
    ]
    for chem in CHEMICALS:
        cf = carbon_fraction(*FORMULA[chem])
        products.append(product(chem, carbon_mass_fraction=round(cf, 6), use_phase_combusts=cf > 0,
                                sector="chem"))

    procs = []
    # Energy system.
    procs += [
        process("wind", "power", {}, capex=1250, opex_fixed=25, lifetime=25, tags=["renewable"],
                sector="power", availability_profile="wind", max_capacity=300000, provenance=PH),
        process("solar_pv", "power", {}, capex=550, opex_fixed=10, lifetime=25, tags=["renewable"],
                sector="power", availability_profile="solar", max_capacity=350000, provenance=PH),
        process("gas_power", "power", {"natural_gas": -1.75}, capex=800, opex_fixed=20,
                opex_var=0.003, direct_emissions=1.75 * GAS_COMBUSTION, lifetime=30,
                tags=["fossil"], sector="power", seed_from_demand=True, provenance=PH),
        process("battery", "power", {}, capex=250, opex_fixed=5, lifetime=15, sector="power",
                storage={"charge_efficiency": 0.95, "discharge_efficiency": 0.95,
                         "energy_to_power": 4.0}, provenance=PH),
        process("gas_furnace_ht", "ht_heat", {"natural_gas": -1.1}, capex=150, opex_var=0.002,
                direct_emissions=1.1 * GAS_COMBUSTION, tags=["fossil", "heat"], sector="ht_heat",
                seed_from_demand=True, provenance=PH),
        process("resistance_heater", "ht_heat", {"power": -1}, capex=8670, opex_var=0.002,
                direct_emissions=0.001, tags=["electrified", "heat"], sector="ht_heat"),
        process("h2_boiler", "ht_heat", {"h2": -0.03}, capex=8670, opex_var=0.002,
                direct_emissions=0.001, tags=["heat"], sector="ht_heat"),
        process("heat_pump_lt", "lt_heat", {"power": -0.33}, capex=700, lifetime=20,
                tags=["electrified", "heat"], sector="chem", provenance=PH),
        process("gas_boiler_lt", "lt_heat", {"natural_gas": -1.1}, capex=100,
                direct_emissions=1.1 * GAS_COMBUSTION, tags=["fossil", "heat"], sector="chem",
                provenance=PH),
        process("electrode_boiler", "mt_heat", {"power": -1.0}, capex=150, opex_var=0.001,
                tags=["electrified", "heat"], sector="chem", provenance=PH),
        process("gas_boiler_mt", "mt_heat", {"natural_gas": -1.1}, capex=100,
                direct_emissions=1.1 * GAS_COMBUSTION, tags=["fossil", "heat"], sector="chem",
                provenance=PH),
    ]
    # Hydrogen and CO2.
    procs += [
        process("pem", "h2",
                {"power": by_year([-49.8, -48.3, -47.0, -45.7, -44.5, -43.4, -42.3])},
                capex=by_year([39797, 36460, 35454, 30324, 25166, 20271, 16233]),
                opex_fixed=by_year([696, 681, 615, 507, 449, 350, 299]),
                tags=["electrified"], sector="chem"),
        process("smr_h2", "h2", {"natural_gas": -45.0, "co2_ps": 8.0}, capex=9000, opex_var=0.05,
                direct_emissions=1.0, tags=["fossil"], sector="chem", provenance=PH),
        process("dac", "co2",
                {"power": by_year([-0.81, -0.78, -0.75, -0.73, -0.70, -0.67, -0.64]),
                 "lt_heat": by_year([-3.3, -3.0, -2.8, -2.5, -2.3, -2.0, -1.76])},
                capex=by_year([5840, 5840, 4272, 2704, 2300, 1896, 1744]),
                opex_fixed=4, opex_fixed_mode="percent_of_capex",
                direct_emissions=by_year([-0.96, -0.96, -0.966, -0.971, -0.976, -0.98, -0.984]),
                tags=["capture"], sector="chem"),
        process("point_source_capture", "co2",
                {"co2_ps": -1, "power": -0.1, "ht_heat": -0.003}, capex=119, opex_var=0.00043,
                tags=["capture"], sector="chem"),
        process("asu", "nitrogen", {"power": -0.25}, capex=300, opex_var=0.002, sector="chem",
                provenance=PH),
    ]
    # Chemicals: fossil and electrified route per product.
    procs += [
        process("ammonia_smr", "ammonia", {"natural_gas": -7.5, "power": -0.1, "co2_ps": 1.0},
                capex=1500, opex_var=0.02, direct_emissions=0.3, tags=["fossil"], sector="chem",
                seed_from_demand=True, provenance=PH),
        process("ammonia_hb", "ammonia", {"power": -0.74, "h2": -0.18, "nitrogen": -0.82},
                capex=3300, opex_var=0.00825, tags=["electrified"], sector="chem"),
        process("methanol_syngas", "methanol", {"natural_gas": -10.0, "power": -0.1},
                capex=1200, opex_var=0.02, direct_emissions=0.6, tags=["fossil"], sector="chem",
                seed_from_demand=True, provenance=PH),
        process("methanol_ccu", "methanol",
                {"power": -0.018, "mt_heat": -0.44, "h2": -0.2, "co2": -1.46},
                capex=1500, opex_var=0.01, direct_emissions=0.085, tags=["electrified"],
                sector="chem", provenance=PH),
    ]
    olefin_feed = {"ethylene": 2.6, "propylene": 2.6}
    aromatic_feed = {"benzene": 3.8, "toluene": 3.7, "xylene": 3.7}
    for chem, feed in list(olefin_feed.items()) + list(aromatic_feed.items()):
        cracker = chem in olefin_feed
        procs.append(process(
            chem + "_fossil", chem,
            {"naphtha": -1.0, "natural_gas": -4.0 if cracker else -2.0},
            capex=1800 if cracker else 900, opex_var=0.02,
            direct_emissions=(4.0 if cracker else 2.0) * GAS_COMBUSTION, tags=["fossil"],
            sector="chem", seed_from_demand=True, provenance=PH))
        procs.append(process(
            chem + ("_mto" if cracker else "_mta"), chem,
            {"methanol": -feed, "power": -0.5 if cracker else -0.8},
            capex=2000 if cracker else 2500, opex_var=0.02,
            direct_emissions=0.43 if cracker else 0.5, tags=["electrified"], sector="chem",
            provenance=PH))

    demands = [{"product": c, "annual": v * 1e6} for c, v in CHEMICALS.items()]
    demands.append({"product": "power", "profile": "electricity_load",
                    "scale": ELECTRICITY_TWH * 1e6 / HOURS})
    demands.append({"product": "ht_heat", "annual": HT_HEAT_TWH * 1e6})

    services = [
        {"id": "methanol", "product": "methanol", "fossil": "methanol_syngas",
         "electrified": "methanol_ccu"},
        {"id": "ammonia", "product": "ammonia", "fossil": "ammonia_smr",
         "electrified": "ammonia_hb", "split_point_source": True},
    ]
    for chem in list(olefin_feed) + list(aromatic_feed):
        services.append({"id": chem, "product": chem, "fossil": chem + "_fossil",
                         "electrified": chem + ("_mto" if chem in olefin_feed else "_mta")})
    services.append({"id": "ht_heat", "product": "ht_heat", "fossil": "gas_furnace_ht",
                     "electrified": "resistance_heater", "report_divisor": 15.4,
                     "report_unit": "MWh per t gas-equivalent"})

    doc = {
        "name": "desk",
        "profiles_csv": "profiles.csv",
        "products": products,
        "processes": procs,
        "demands": demands,
        "emissions_schedule": {"caps_mt": {}, "residual_penalty": 1.0},
        "scenario": {
            "investment_years": YEARS,
            "base_year": 2016,
            "foresight_periods": 2,
            "typical_periods": 6,
            "hours_per_typical_period": 6,
            "interest_rate": 0.05,
            "annuity_years": 30,
            "h2_import_penalty": 1e5,
            "seed": 42,
            "overrides": {
                "optimistic-ht-heat": {
                    "description": "low-cost high-temperature heat",
                    "processes": {
                        "resistance_heater": {"capex": 238, "opex_var": 0.0047},
                        "h2_boiler": {"capex": 175, "opex_var": 0.0035},
                    },
                }
            },
        },
        "analytics": {
            "services": services,
            "priority_sectors": ["power"],
            "default_producers": {"h2": "pem", "co2": "dac"},
        },
    }
    baseline = baseline_emissions_mt(doc)
    doc["emissions_schedule"]["caps_mt"] = {
        str(y): round(baseline * TARGETS[y] / TARGETS[2016], 6) for y in YEARS}
    doc["emissions_schedule"]["baseline_mt"] = round(baseline, 6)
    return doc


def baseline_emissions_mt(doc):
    """All-fossil system at full demand, 2016 coefficients, use phase included."""
    procs = {p["id"]: p for p in doc["processes"]}
    prods = {p["id"]: p for p in doc["products"]}
    fossil = {"power": "gas_power", "ht_heat": "gas_furnace_ht", "ammonia": "ammonia_smr",
              "methanol": "methanol_syngas"}
    for chem in CHEMICALS:
        fossil.setdefault(chem, chem + "_fossil")

    def intensity(pid):
        p = procs[pid]
        e = p.get("direct_emissions", 0.0)
        for q, f in p["flows"].items():
            if f < 0 and q == "natural_gas":
                e += -f * GAS_UPSTREAM
            elif f < 0 and q == "naphtha":
                e += -f * prods["naphtha"]["import_emissions"]
            elif f < 0 and q == "power":
                e += -f * intensity(fossil["power"])
            elif f > 0 and prods[q].get("role") == "co2_point_source":
                e += f
        return e

    total = 0.0
    for d in doc["demands"]:
        annual = d.get("annual", d.get("scale", 0.0) * HOURS)
        total += annual * intensity(fossil[d["product"]])
        prod = prods[d["product"]]
        if prod.get("use_phase_combusts"):
            total += annual * prod["carbon_mass_fraction"] * 44.0 / 12.0
    return total / 1e6


def build_toy():
    """Two-chemical system on three investment years for quick CLI runs."""
    products = [
        product("power", "MWh", role="electricity", sector="power"),
        product("natural_gas", "MWh", import_price=GAS_PRICE, import_emissions=GAS_UPSTREAM,
                provenance=PH),
        product("h2", role="hydrogen", import_price=0.0, import_emissions=0.0),
        product("co2", "tCO2", role="co2_captured"),
        product("lt_heat", "MWh"),
        product("methanol", carbon_mass_fraction=0.375, use_phase_combusts=True, sector="chem"),
        product("ammonia", sector="chem"),
    ]
    procs = [
        process("wind", "power", {}, capex=1250, opex_fixed=25, lifetime=25, tags=["renewable"],
                sector="power", availability_profile="wind", provenance=PH),
        process("gas_power", "power", {"natural_gas": -1.75}, capex=800, opex_var=0.003,
                direct_emissions=0.35, tags=["fossil"], sector="power", seed_from_demand=True,
                provenance=PH),
        process("pem", "h2", {"power": -45.0}, capex=25000, opex_fixed=450,
                tags=["electrified"], sector="chem"),
        process("dac", "co2", {"power": -0.7, "lt_heat": -2.3}, capex=2300, opex_fixed=4,
                opex_fixed_mode="percent_of_capex", direct_emissions=-0.976, tags=["capture"],
                sector="chem"),
        process("heat_pump_lt", "lt_heat", {"power": -0.33}, capex=700, tags=["electrified"],
                sector="chem", provenance=PH),
        process("methanol_syngas", "methanol", {"natural_gas": -10.0}, capex=1200, opex_var=0.02,
                direct_emissions=0.6, tags=["fossil"], sector="chem", seed_from_demand=True,
                provenance=PH),
        process("methanol_ccu", "methanol", {"power": -0.018, "h2": -0.2, "co2": -1.46},
                capex=1500, opex_var=0.01, direct_emissions=0.085, tags=["electrified"],
                sector="chem", provenance=PH),
        process("ammonia_smr", "ammonia", {"natural_gas": -7.5}, capex=1500, opex_var=0.02,
                direct_emissions=1.3, tags=["fossil"], sector="chem", seed_from_demand=True,
                provenance=PH),
        process("ammonia_hb", "ammonia", {"power": -0.95, "h2": -0.18}, capex=3300,
                opex_var=0.00825, tags=["electrified"], sector="chem"),
    ]
    return {
        "name": "toy",
        "profiles_csv": "profiles.csv",
        "products": products,
        "processes": procs,
        "demands": [{"product": "methanol", "constant": 100.0},
                    {"product": "ammonia", "constant": 200.0},
                    {"product": "power", "profile": "electricity_load", "scale": 2000.0}],
        "emissions_schedule": {"caps_mt": {"2020": 8.0, "2030": 4.0, "2040": 0.0},
                               "residual_penalty": 1.0},
        "scenario": {"investment_years": [2020, 2030, 2040], "base_year": 2016,
                     "foresight_periods": 2, "typical_periods": 4,
                     "hours_per_typical_period": 6, "h2_import_penalty": 1e5, "seed": 7,
                     "overrides": {"cheap-pem": {"description": "halved electrolyser capex",
                                                 "processes": {"pem": {"capex": 12500}}}}},
        "analytics": {
            "services": [
                {"id": "methanol", "product": "methanol", "fossil": "methanol_syngas",
                 "electrified": "methanol_ccu"},
                {"id": "ammonia", "product": "ammonia", "fossil": "ammonia_smr",
                 "electrified": "ammonia_hb"},
            ],
            "priority_sectors": ["power"],
        },
    }


def write(out, doc, seed):
    out.mkdir(parents=True, exist_ok=True)
    (out / "dataset.json").write_text(json.dumps(doc, indent=1) + "\n")
    series = profiles(seed)
    ids = [i for i in series if any("availability_profile" in p and p["availability_profile"] == i
                                    for p in doc["processes"])
           or any(d.get("profile") == i for d in doc["demands"])]
    with open(out / "profiles.csv", "w") as f:
        f.write(",".join(ids) + "\n")
        for h in range(HOURS):
            f.write(",".join("%.6f" % series[i][h] for i in ids) + "\n")


def main():
    data = pathlib.Path(__file__).resolve().parent.parent / "data"
    ap = argparse.ArgumentParser()
    ap.add_argument("--data", default=str(data))
    ap.add_argument("--seed", type=int, default=2016)
    args = ap.parse_args()
    write(pathlib.Path(args.data) / "desk", build(), args.seed)
    write(pathlib.Path(args.data) / "toy", build_toy(), args.seed)


if __name__ == "__main__":
    main()
