"""Check that Monte Carlo samples live inside the intrusive bounds.

For an interval result every sample must fall inside the bounds; for a
p-box result the empirical CDF must stay within the CDF bounds pointwise
up to discretization and sampling slack.  A nonempty violation list
means either the bounds are wrong or the two runs disagree about the
model; both are reportable findings, not tolerable noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..interval import Interval
from ..pbox import PBox


@dataclass
class Violation:
    var: str
    detail: str


@dataclass
class EnclosureReport:
    checked: list[str] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        if self.ok:
            return f"enclosure holds for {', '.join(self.checked) or 'no variables'}"
        lines = ["enclosure VIOLATED:"]
        for v in self.violations:
            lines.append(f"  {v.var}: {v.detail}")
        return "\n".join(lines)


def compare_enclosure(
    intrusive_env: dict,
    samples: dict[str, np.ndarray],
    slack: float | None = None,
) -> EnclosureReport:
    report = EnclosureReport()
    for var, xs in samples.items():
        if var not in intrusive_env:
            report.violations.append(Violation(var, "missing from the intrusive run"))
            continue
        bound = intrusive_env[var]
        report.checked.append(var)
        if isinstance(bound, Interval):
            outside = np.count_nonzero((xs < bound.lo) | (xs > bound.hi))
            if outside:
                worst = (float(xs.min()), float(xs.max()))
                report.violations.append(
                    Violation(var, f"{outside} of {xs.size} samples outside {bound} (range {worst})")
                )
        elif isinstance(bound, PBox):
            s = 1.0 / bound.steps + 4.0 / math.sqrt(xs.size) if slack is None else slack
            sorted_xs = np.sort(xs)
            n = bound.steps
            i = np.arange(n)
            # The empirical CDF may not exceed the upper CDF bound: just
            # below left[i] the bound is i/n, and the ecdf there is the
            # count of samples strictly below left[i].
            ecdf_below_left = np.searchsorted(sorted_xs, bound.left, side="left") / xs.size
            hi_escape = float(np.max(ecdf_below_left - i / n))
            # ... nor undercut the lower bound: at right[i] the bound has
            # risen to (i+1)/n and the ecdf counts samples <= right[i].
            ecdf_at_right = np.searchsorted(sorted_xs, bound.right, side="right") / xs.size
            lo_escape = float(np.max((i + 1) / n - ecdf_at_right))
            if hi_escape > s or lo_escape > s:
                report.violations.append(
                    Violation(
                        var,
                        f"empirical CDF escapes the bounds by "
                        f"{max(hi_escape, lo_escape):.4g} (> slack {s:.4g})",
                    )
                )
        elif isinstance(bound, (int, float)):
            if not np.all(xs == float(bound)):
                report.violations.append(Violation(var, f"samples differ from scalar {bound!r}"))
        else:
            report.violations.append(Violation(var, f"unsupported bound {bound!r}"))
    return report
