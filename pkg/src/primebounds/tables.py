"""Reference catalog of effective |pi(x) - Li(x)| bound constants.

Table I holds source envelopes taken from the literature (Trudgian 2016;
Fiori--Kadiri--Swidinsky; Johnston--Yang); their proofs are out of scope
here and the tuples are trusted inputs.  Tables II--V hold derived rows:

  II  -- relaxation outputs (tilde parameters, touching point, empirical
         onset) for selected (tilde_b, tilde_c) choices,
  III -- amplitude-inflated rows pushing the validity onset down to x0 = 2,
  IV  -- pi-relative / nth-prime threshold table (empirical x*, n* plus the
         kernel peak and the prime counts at the landmarks),
  V   -- the b = -1 subset, where the kernel peak degenerates to 1.

Each derived row records the reference values the verification harness is
expected to reproduce.  Two rows are known to be unreproducible from their
own printed inputs (digit transpositions in the reference data); they carry
a ``note`` saying exactly which perturbed constant does reproduce them, and
the harness reports them as mismatches rather than silently adjusting.

Reference x* / n* thresholds were computed against the principal-value Li;
the offset convention reproduces none of them (the harness can demonstrate
this by running both).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .li_math import BoundParams

__all__ = [
    "SourceBound",
    "RelaxationRow",
    "InflatedRow",
    "ThresholdRow",
    "TABLE_I",
    "TABLE_II",
    "TABLE_III",
    "TABLE_IV",
    "TABLE_V",
    "PRESETS",
    "TABLE_IDS",
]


@dataclass(frozen=True)
class SourceBound:
    """A literature envelope |pi - Li| < a x (ln x)^b exp(-c sqrt(ln x)), x >= x0."""

    preset: str
    params: BoundParams
    source: str


@dataclass(frozen=True)
class RelaxationRow:
    """One relaxation: base row, chosen (tilde_b, tilde_c), reference outputs."""

    base: BoundParams
    tilde_b: float
    tilde_c: float
    ref_tilde_a: float
    ref_x_max: float
    ref_x_tilde0: int
    note: str = ""

    def derived_params(self) -> BoundParams:
        """The reference relaxed tuple, valid from the reference onset."""
        return BoundParams(self.ref_tilde_a, self.tilde_b, self.tilde_c, self.ref_x_tilde0)


@dataclass(frozen=True)
class InflatedRow:
    """Amplitude inflated so the raw envelope holds from x0 = 2.

    ``guaranteed_from`` is the abscissa above which an envelope of the same
    shape is already guaranteed (the base row's onset), so admissibility needs
    checking only on [2, guaranteed_from].
    """

    a: float
    b: float
    c: float
    guaranteed_from: int


@dataclass(frozen=True)
class ThresholdRow:
    """One threshold-table row: inputs plus the reference landmark columns.

    ``feasible`` is False for rows whose kernel peak is so large that the scan
    ceiling (1 + 1/e) x_peak lies far beyond any practical engine limit; for
    those the reference reports no x*/n* and ``ref_n_peak`` is the y/ln y
    estimate rather than an exact count.
    """

    params: BoundParams
    ref_x_peak: float
    ref_x_star: int | None
    ref_n0: int
    ref_n_peak: int | None
    ref_n_star: int | None
    feasible: bool = True
    ref_n_peak_estimate: float | None = None
    note: str = ""


# ---------------------------------------------------------------------------
# Table I -- source bounds (trusted literature inputs)
# ---------------------------------------------------------------------------

TABLE_I: list[SourceBound] = [
    SourceBound("trudgian-eq7", BoundParams(0.4394, -3 / 4, 0.32115, 59), "Trudgian 2016, eq. (7)"),
    SourceBound("trudgian-th2", BoundParams(0.2795, -3 / 4, 0.3936, 229), "Trudgian 2016, Thm 2"),
    SourceBound("fks", BoundParams(9.2211, 1 / 2, 0.8476, 2), "Fiori-Kadiri-Swidinsky"),
    SourceBound("jy", BoundParams(9.59, 0.515, 0.8274, 2), "Johnston-Yang"),
]

_EQ7 = TABLE_I[0].params
_TH2 = TABLE_I[1].params
_FKS = TABLE_I[2].params
_JY = TABLE_I[3].params


# ---------------------------------------------------------------------------
# Table II -- relaxations
# ---------------------------------------------------------------------------

_ROW1_NOTE = (
    "reference (tilde_a, x_max) = (0.4680, 203931) reproduce only with rate "
    "c = 0.3215 in place of the row's printed 0.32115 (digit transposition in "
    "the reference data); the formula with the printed inputs gives "
    "(0.46852, 230064)"
)

TABLE_II: list[RelaxationRow] = [
    RelaxationRow(_EQ7, -7 / 8, 1 / 4, 0.4680, 203931, 41, note=_ROW1_NOTE),
    RelaxationRow(_EQ7, -1.0, 1 / 6, 0.4795, 35439, 41),
    RelaxationRow(_TH2, -5 / 6, 1 / 3, 0.2804, 2097, 227),
    RelaxationRow(_TH2, -1.0, 1 / 4, 0.3164, 184165, 223),
    RelaxationRow(_FKS, 0.0, 1 / 2, 9.7590, 3930, 2),
    RelaxationRow(_FKS, -1 / 2, 1 / 5, 11.9026, 13874, 2),
    RelaxationRow(_FKS, -1.0, 1 / 10, 29.6698, 9849130, 2),
    RelaxationRow(_JY, 0.0, 1 / 2, 11.148, 19877, 2),
    RelaxationRow(_JY, -1 / 2, 1 / 5, 13.659, 35206, 2),
    RelaxationRow(_JY, -1.0, 1 / 10, 34.955, 34331213, 2),
]


# ---------------------------------------------------------------------------
# Table III -- amplitude inflation down to x0 = 2
# ---------------------------------------------------------------------------

TABLE_III: list[InflatedRow] = [
    InflatedRow(3 / 4, -3 / 4, 0.32115, 59),
    InflatedRow(7 / 8, -7 / 8, 0.32115, 59),
    InflatedRow(0.93, -1.0, 0.32115, 59),
    InflatedRow(0.8935, -3 / 4, 0.3936, 229),
    InflatedRow(0.94, -7 / 8, 0.3936, 229),
    InflatedRow(1.05, -1.0, 0.3936, 229),
]


# ---------------------------------------------------------------------------
# Tables IV / V -- threshold tables
# ---------------------------------------------------------------------------

_E25 = math.exp(25.0)

_ROW_3164_NOTE = (
    "reference (x*, n*) = (97, 25) reproduce only with amplitude 0.3614 in "
    "place of the row's printed 0.3164 (digit transposition in the reference "
    "data); the scan with the printed amplitude gives (149, 35)"
)
_ROW_11148_NOTE = (
    "reference n_peak = 595431 conflicts with the identical-peak row above it "
    "(595341 = pi(e^16), which the engine confirms); transposed digits in the "
    "reference data"
)

TABLE_IV: list[ThresholdRow] = [
    ThresholdRow(BoundParams(0.4394, -3 / 4, 0.32115, 59), 11.3, 41, 17, 5, 13),
    ThresholdRow(BoundParams(0.4680, -7 / 8, 1 / 4, 41), math.e, 37, 13, 1, 12),
    ThresholdRow(BoundParams(0.4795, -1.0, 1 / 6, 41), 1.0, 37, 13, 0, 12),
    ThresholdRow(BoundParams(0.2795, -3 / 4, 0.3936, 229), 5.022, 149, 50, 3, 35),
    ThresholdRow(BoundParams(0.2804, -5 / 6, 1 / 3, 227), math.e, 149, 49, 1, 35),
    ThresholdRow(BoundParams(0.3164, -1.0, 1 / 4, 223), 1.0, 97, 48, 0, 25,
                 note=_ROW_3164_NOTE),
    ThresholdRow(BoundParams(9.2211, 1 / 2, 0.8476, 2), 275789.0, 2, 1, 24104, 1),
    ThresholdRow(BoundParams(9.7590, 0.0, 1 / 2, 2), math.exp(16.0), 2, 1, 595341, 1),
    ThresholdRow(BoundParams(11.9026, -1 / 2, 1 / 5, 2), _E25, None, 1, None, None,
                 feasible=False, ref_n_peak_estimate=_E25 / 25.0),
    ThresholdRow(BoundParams(29.6698, -1.0, 1 / 10, 2), 1.0, 2, 1, 0, 1),
    ThresholdRow(BoundParams(9.59, 0.515, 0.8274, 2), 667161.0, 2, 1, 54105, 1),
    ThresholdRow(BoundParams(11.148, 0.0, 1 / 2, 2), math.exp(16.0), 2, 1, 595431, 1,
                 note=_ROW_11148_NOTE),
    ThresholdRow(BoundParams(13.659, -1 / 2, 1 / 5, 2), _E25, None, 1, None, None,
                 feasible=False, ref_n_peak_estimate=_E25 / 25.0),
    ThresholdRow(BoundParams(34.955, -1.0, 1 / 10, 2), 1.0, 2, 1, 0, 1),
]

TABLE_V: list[ThresholdRow] = [
    ThresholdRow(BoundParams(0.4795, -1.0, 1 / 6, 41), 1.0, 37, 13, 0, 12),
    ThresholdRow(BoundParams(0.3164, -1.0, 1 / 4, 223), 1.0, 97, 48, 0, 25,
                 note=_ROW_3164_NOTE),
    ThresholdRow(BoundParams(29.6698, -1.0, 1 / 10, 2), 1.0, 2, 1, 0, 1),
    ThresholdRow(BoundParams(34.955, -1.0, 1 / 10, 2), 1.0, 2, 1, 0, 1),
    ThresholdRow(BoundParams(1.0, -1.0, 0.32115, 2), 1.0, 2, 1, 0, 1),
    ThresholdRow(BoundParams(1.1, -1.0, 0.3936, 2), 1.0, 2, 1, 0, 1),
]

TABLE_IDS = ("II", "III", "IV", "V")


def _build_presets() -> dict[str, BoundParams]:
    presets: dict[str, BoundParams] = {sb.preset: sb.params for sb in TABLE_I}
    for i, row in enumerate(TABLE_II, start=1):
        presets[f"II-{i}"] = row.derived_params()
    for i, row in enumerate(TABLE_III, start=1):
        presets[f"III-{i}"] = BoundParams(row.a, row.b, row.c, 2)
    for i, row in enumerate(TABLE_IV, start=1):
        presets[f"IV-{i}"] = row.params
    for i, row in enumerate(TABLE_V, start=1):
        presets[f"V-{i}"] = row.params
    return presets


#: Named parameter sets accepted by the CLI's ``--preset`` flag.
PRESETS: dict[str, BoundParams] = _build_presets()
