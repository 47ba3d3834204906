"""Discord and entanglement across the Werner family z |psi-><psi-| + (1 - z) I/4.

Werner states are separable for z <= 1/3, yet their discord is nonzero for
every z > 0: discord captures quantum correlations that entanglement misses.

    python demos/werner_discord.py
"""

import numpy as np

from dqdcorr import quantum_discord
from dqdcorr.qcore import ket, projector

singlet = projector((ket("ud") - ket("du")) / np.sqrt(2))

print(f"{'z':>5s} {'I':>8s} {'J':>8s} {'discord':>8s} {'C':>8s} {'EoF':>8s}")
for z in np.linspace(0, 1, 11):
    rho = z * singlet + (1 - z) * np.eye(4) / 4
    r = quantum_discord(rho)
    print(f"{z:5.2f} {r.mutual_info:8.4f} {r.classical_corr:8.4f} {r.discord:8.4f} "
          f"{r.concurrence:8.4f} {r.eof:8.4f}")
