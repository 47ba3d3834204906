"""Entanglement and discord of the strongly coupled pair (J = 4D) at three temperatures.

The bath is common to both qubits, eta = 1/600. Entanglement is washed out
much faster at 2 K than at 0.1 K, while discord keeps a sizeable value.

    python demos/temperature_family.py
"""

import dataclasses

from dqdcorr import figure_preset, run_scenario

for name in ("fig2a", "fig2b", "fig2c"):
    cfg = figure_preset(name)
    result = run_scenario(cfg.replace(output=dataclasses.replace(cfg.output, stride=200)))
    print(f"\n{name}: T = {cfg.bath.temperature_kelvin} K")
    print(f"{'t':>6s} {'EoF':>8s} {'discord':>8s} {'purity':>8s}")
    for row in result.rows:
        print(f"{row.t:6.1f} {row.eof:8.4f} {row.discord:8.4f} {row.purity:8.4f}")
