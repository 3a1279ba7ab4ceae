"""Integer arithmetic behind the projective-plane counterexample.

Objects are representations ``U (x) O(1) -> W (x) O(2)`` described by
``u = dim U`` and ``w = dim W`` with ``dim V = 3`` (sections of O(1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class QuiverRepDims:
    u: int
    w: int
    vdim: int = 3

    def __post_init__(self):
        if self.u < 0 or self.w < 0 or self.vdim < 0:
            raise ValueError("dimensions must be non-negative")

    @property
    def balanced(self) -> bool:
        """u = 2w, which holds for every object of the intersection category."""
        return self.u == 2 * self.w


def chi_line(a: int, b: int) -> int:
    """Euler pairing chi(O(a), O(b)) = chi(O(b - a)) on the projective plane."""
    d = b - a
    return (d + 1) * (d + 2) // 2


def homfp_euler(r1: QuiverRepDims, r2: QuiverRepDims) -> int:
    """Euler characteristic of U*U' + W*W' -> U*W'V* (degrees 0 and 1)."""
    if r1.vdim != r2.vdim:
        raise ValueError("both representations must use the same V")
    return r1.u * r2.u + r1.w * r2.w - r1.vdim * r1.u * r2.w


def admissibility_contradiction(w: int) -> dict:
    """Solve chi(F, G) = chi(F, G') for dim W' and report the contradiction.

    chi(F, G) = -w because the only non-zero Hom is Hom^1(F, G) = W*; with
    G' balanced (u' = 2w') the complex gives chi(F, G') = -w w'.
    """
    if w < 0:
        raise ValueError("w must be non-negative")
    chi_fg = -w
    F = QuiverRepDims(2 * w, w)
    offset = homfp_euler(F, QuiverRepDims(0, 0))
    slope = homfp_euler(F, QuiverRepDims(2, 1)) - offset   # chi(F, G') is linear in w'
    report = {
        "w": w,
        "chi_F_G": chi_fg,
        "chi_F_Gprime": f"{slope}*w' + {offset}" if offset else f"{slope}*w'",
        "cited": "no indecomposable object of the intersection category has dim W = 1",
    }
    if slope == 0:
        report.update(forced_w_prime=None, vacuous=True, contradiction=False,
                      equation=f"{chi_fg} = {offset}")
        return report
    wp = Fraction(chi_fg - offset, slope)
    report.update(
        forced_w_prime=int(wp) if wp.denominator == 1 else str(wp),
        vacuous=False,
        contradiction=wp == 1,
        equation=f"{chi_fg} = {slope}*w'",
    )
    return report


def format_report(rep: dict) -> str:
    lines = [f"w = {rep['w']}",
             f"chi(F,G)  = {rep['chi_F_G']}",
             f"chi(F,G') = {rep['chi_F_Gprime']}"]
    if rep["vacuous"]:
        lines.append("w = 0: the equation puts no constraint on w' (vacuous)")
    else:
        lines.append(f"{rep['equation']}  =>  w' = {rep['forced_w_prime']}")
        if rep["contradiction"]:
            lines.append(f"contradiction: {rep['cited']}")
    return "\n".join(lines)
