"""Raster proxy for Arakeljan's hole conditions in a plane domain G.

A grid window samples a domain G: cells are outside G, free G cells, members
of one or two closed sets (F and E), or probe cells.  Complement components of
a subject set within G are labeled by 4-connected flood fill; the subject
itself is treated with 8-connectivity where adjacency of the set matters (the
standard dual pairing, so thin diagonal curves still separate).

A component of G minus the subject is a G-hole when it could be enclosed in a
compact subset of G at raster fidelity: it must not touch the window frame
while the frame stands for an unbounded part of G, and no cell of it may be
4-adjacent to a cell outside G.  Every other component is a strict hole (it
escapes toward the boundary of G or to infinity).

The first Arakeljan condition is the absence of G-holes.  The second
(no compact K may trap an uncontainable family of holes) is only
semi-decidable on a finite raster: we union a family of probe compacts onto
the subject and fail if some resulting G-hole's closure reaches the boundary
of G.  Two closed cell squares meet exactly when the cells are 8-adjacent,
so the closure test is 8-adjacency of hole cells to cells outside G (plain
4-adjacency already disqualifies a component from being a G-hole at all).
A clean run is reported as "passes-probes", never as a proof.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Sequence

import numpy as np

from .errors import ValidationError


class CellClass(IntEnum):
    OUTSIDE_G = 0
    G_FREE = 1
    F_SET = 2
    E_SET = 3
    K_PROBE = 4


_CHAR_TO_CLASS = {
    " ": CellClass.OUTSIDE_G,
    ".": CellClass.G_FREE,
    "#": CellClass.F_SET,
    "E": CellClass.E_SET,
    "K": CellClass.K_PROBE,
}
_CLASS_TO_CHAR = {v: k for k, v in _CHAR_TO_CLASS.items()}


@dataclass(eq=False)
class GridPlane:
    """A rectangular window of cells sampling the domain G."""

    cells: np.ndarray
    frame_is_unbounded: bool
    cell_size: float = 1.0
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self) -> None:
        cells = np.asarray(self.cells)
        if cells.ndim != 2 or cells.size == 0:
            raise ValidationError("grid cells must form a nonempty 2-d array")
        if not np.all((cells >= 0) & (cells <= 4)):
            raise ValidationError("grid cells must carry class codes 0..4")
        self.cells = cells.astype(np.uint8)
        if self.cell_size <= 0.0:
            raise ValidationError("cell_size must be positive")
        counts = np.bincount(self.cells.reshape(-1), minlength=5)
        if counts[CellClass.G_FREE] + counts[CellClass.F_SET] == 0:
            raise ValidationError("grid must contain at least one G_FREE or F_SET cell")

    @property
    def height(self) -> int:
        return int(self.cells.shape[0])

    @property
    def width(self) -> int:
        return int(self.cells.shape[1])

    @property
    def g_mask(self) -> np.ndarray:
        return self.cells != CellClass.OUTSIDE_G

    @property
    def outside_mask(self) -> np.ndarray:
        return self.cells == CellClass.OUTSIDE_G

    def class_mask(self, cls: CellClass) -> np.ndarray:
        return self.cells == cls

    def subject_mask(self, selector) -> np.ndarray:
        """Normalize a subject selector to a boolean mask inside G.

        Accepts "F", "E", "E+F" (or "union"), "none", an iterable of
        CellClass codes, or a boolean mask (which must stay inside G).
        """
        if isinstance(selector, np.ndarray):
            mask = selector.astype(bool)
            if mask.shape != self.cells.shape:
                raise ValidationError("subject mask shape does not match the grid")
            if np.any(mask & self.outside_mask):
                raise ValidationError("subject mask leaves G")
            return mask
        if isinstance(selector, str):
            key = selector.strip().lower()
            classes = {
                "f": (CellClass.F_SET,),
                "e": (CellClass.E_SET,),
                "e+f": (CellClass.E_SET, CellClass.F_SET),
                "f+e": (CellClass.E_SET, CellClass.F_SET),
                "ef": (CellClass.E_SET, CellClass.F_SET),
                "union": (CellClass.E_SET, CellClass.F_SET),
                "none": (),
            }.get(key)
            if classes is None:
                raise ValidationError(f"unknown subject selector {selector!r}")
        else:
            try:
                classes = tuple(CellClass(c) for c in selector)
            except (TypeError, ValueError) as exc:
                raise ValidationError(f"bad subject selector {selector!r}") from exc
        mask = np.zeros(self.cells.shape, dtype=bool)
        for cls in classes:
            mask |= self.cells == cls
        return mask

    # --- text format ------------------------------------------------------

    @classmethod
    def parse_text(cls, text: str) -> "GridPlane":
        """Parse "grid <w> <h> <unbounded>" plus h rows of cell characters.

        Rows shorter than the width are padded with spaces (outside G), since
        trailing blanks rarely survive editors; longer rows are an error.
        """
        lines = text.splitlines()
        if not lines:
            raise ValidationError("empty grid text")
        head = lines[0].split()
        if len(head) != 4 or head[0] != "grid":
            raise ValidationError(
                "grid header must be 'grid <width> <height> <unbounded:0|1>'"
            )
        try:
            width, height, unbounded = int(head[1]), int(head[2]), int(head[3])
        except ValueError as exc:
            raise ValidationError("grid header fields must be integers") from exc
        if width < 1 or height < 1:
            raise ValidationError("grid dimensions must be positive")
        if unbounded not in (0, 1):
            raise ValidationError("unbounded flag must be 0 or 1")
        body = lines[1:]
        if len(body) < height:
            raise ValidationError(f"expected {height} grid rows, found {len(body)}")
        cells = np.zeros((height, width), dtype=np.uint8)
        for r in range(height):
            row = body[r]
            if len(row) > width:
                raise ValidationError(f"grid row {r} longer than width {width}")
            for c, ch in enumerate(row):
                if ch not in _CHAR_TO_CLASS:
                    raise ValidationError(f"unknown grid character {ch!r} at row {r}")
                cells[r, c] = _CHAR_TO_CLASS[ch]
        return cls(cells=cells, frame_is_unbounded=bool(unbounded))

    def format_text(self) -> str:
        lines = [f"grid {self.width} {self.height} {1 if self.frame_is_unbounded else 0}"]
        for r in range(self.height):
            lines.append("".join(_CLASS_TO_CHAR[CellClass(v)] for v in self.cells[r]))
        return "\n".join(lines) + "\n"

    # --- JSON format ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "unbounded": self.frame_is_unbounded,
            "cell_size": float(self.cell_size),
            "origin": [float(self.origin[0]), float(self.origin[1])],
            "cells": [int(v) for v in self.cells.reshape(-1)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GridPlane":
        if not isinstance(data, dict):
            raise ValidationError("grid JSON must be an object")
        for key in ("width", "height", "unbounded", "cells"):
            if key not in data:
                raise ValidationError(f"grid JSON missing field {key!r}")
        width, height = int(data["width"]), int(data["height"])
        flat = data["cells"]
        if not isinstance(flat, list) or len(flat) != width * height:
            raise ValidationError("grid 'cells' must list width*height codes")
        cells = np.asarray(flat, dtype=np.int64).reshape(height, width)
        origin = data.get("origin", [0.0, 0.0])
        return cls(
            cells=cells,
            frame_is_unbounded=bool(data["unbounded"]),
            cell_size=float(data.get("cell_size", 1.0)),
            origin=(float(origin[0]), float(origin[1])),
        )


def _dilate4(mask: np.ndarray) -> np.ndarray:
    out = mask.copy()
    out[1:, :] |= mask[:-1, :]
    out[:-1, :] |= mask[1:, :]
    out[:, 1:] |= mask[:, :-1]
    out[:, :-1] |= mask[:, 1:]
    return out


def _dilate8(mask: np.ndarray) -> np.ndarray:
    out = _dilate4(mask)
    out[1:, 1:] |= mask[:-1, :-1]
    out[1:, :-1] |= mask[:-1, 1:]
    out[:-1, 1:] |= mask[1:, :-1]
    out[:-1, :-1] |= mask[1:, 1:]
    return out


@dataclass(frozen=True)
class Component:
    """One 4-connected component of G minus the subject."""

    component_id: int
    cell_count: int
    touches_frame: bool
    adjacent_to_boundary_of_g: bool
    bbox: tuple[int, int, int, int]  # (row_min, col_min, row_max, col_max)
    first_cell: tuple[int, int]


@dataclass(frozen=True, eq=False)
class ComponentLabeling:
    labels: np.ndarray  # int32, -1 where not in the complement
    components: tuple[Component, ...]

    def component_mask(self, component_id: int) -> np.ndarray:
        return self.labels == component_id


def label_components(grid: GridPlane, subject) -> ComponentLabeling:
    """4-connected components of G minus the subject, in row-major seed order."""
    subject_mask = grid.subject_mask(subject)
    complement = grid.g_mask & ~subject_mask
    outside = grid.outside_mask
    h, w = complement.shape
    labels = np.full((h, w), -1, dtype=np.int32)
    components: list[Component] = []
    for r0 in range(h):
        for c0 in range(w):
            if not complement[r0, c0] or labels[r0, c0] >= 0:
                continue
            cid = len(components)
            queue = deque([(r0, c0)])
            labels[r0, c0] = cid
            count = 0
            touches = False
            adjacent = False
            rmin = rmax = r0
            cmin = cmax = c0
            while queue:
                r, c = queue.popleft()
                count += 1
                if r < rmin:
                    rmin = r
                if r > rmax:
                    rmax = r
                if c < cmin:
                    cmin = c
                if c > cmax:
                    cmax = c
                if r == 0 or r == h - 1 or c == 0 or c == w - 1:
                    touches = True
                for rr, cc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
                    if not (0 <= rr < h and 0 <= cc < w):
                        continue
                    if outside[rr, cc]:
                        adjacent = True
                    elif complement[rr, cc] and labels[rr, cc] < 0:
                        labels[rr, cc] = cid
                        queue.append((rr, cc))
            components.append(
                Component(
                    component_id=cid,
                    cell_count=count,
                    touches_frame=touches,
                    adjacent_to_boundary_of_g=adjacent,
                    bbox=(rmin, cmin, rmax, cmax),
                    first_cell=(r0, c0),
                )
            )
    return ComponentLabeling(labels=labels, components=tuple(components))


@dataclass(frozen=True)
class HoleReport:
    """G-hole / strict-hole classification of one complement component."""

    component_id: int
    cell_count: int
    touches_frame: bool
    adjacent_to_boundary_of_g: bool
    is_g_hole: bool
    is_strict_hole: bool

    def to_json(self) -> dict:
        return {
            "component_id": self.component_id,
            "cell_count": self.cell_count,
            "touches_frame": self.touches_frame,
            "adjacent_to_boundary_of_g": self.adjacent_to_boundary_of_g,
            "is_g_hole": self.is_g_hole,
            "is_strict_hole": self.is_strict_hole,
        }


def _report_for(grid: GridPlane, comp: Component) -> HoleReport:
    disqualified = (grid.frame_is_unbounded and comp.touches_frame) or \
        comp.adjacent_to_boundary_of_g
    return HoleReport(
        component_id=comp.component_id,
        cell_count=comp.cell_count,
        touches_frame=comp.touches_frame,
        adjacent_to_boundary_of_g=comp.adjacent_to_boundary_of_g,
        is_g_hole=not disqualified,
        is_strict_hole=disqualified,
    )


def classify_holes(grid: GridPlane, subject) -> list[HoleReport]:
    """Classify every complement component as G-hole or strict hole."""
    labeling = label_components(grid, subject)
    return [_report_for(grid, comp) for comp in labeling.components]


# --- probes ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Probe:
    """A compact probe set: an 8-connected mask with Jordan-like boundary."""

    name: str
    mask: np.ndarray


def _connected(mask: np.ndarray, *, diagonal: bool) -> bool:
    h, w = mask.shape
    total = int(mask.sum())
    if total == 0:
        return True
    start = tuple(np.argwhere(mask)[0])
    seen = np.zeros_like(mask)
    seen[start] = True
    queue = deque([start])
    reached = 0
    if diagonal:
        steps = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))
    else:
        steps = ((-1, 0), (1, 0), (0, -1), (0, 1))
    while queue:
        r, c = queue.popleft()
        reached += 1
        for dr, dc in steps:
            rr, cc = r + dr, c + dc
            if 0 <= rr < h and 0 <= cc < w and mask[rr, cc] and not seen[rr, cc]:
                seen[rr, cc] = True
                queue.append((rr, cc))
    return reached == total


def validate_probe(grid: GridPlane, mask: np.ndarray, name: str = "probe") -> Probe:
    """Probes must be nonempty, strictly inside G, 8-connected, with
    4-connected complement inside their bounding box (the raster stand-in for
    a compact with Jordan boundary).  Strictly inside means no cell is even
    8-adjacent to the complement of G: a compact subset of an open set keeps
    positive distance from its boundary, and on the raster two closed cell
    squares meet exactly when the cells are 8-adjacent."""
    mask = mask.astype(bool)
    if mask.shape != grid.cells.shape:
        raise ValidationError(f"{name}: mask shape does not match the grid")
    if not mask.any():
        raise ValidationError(f"{name}: empty probe mask")
    if np.any(mask & grid.outside_mask):
        raise ValidationError(f"{name}: probe leaves G")
    if np.any(_dilate8(mask) & grid.outside_mask):
        raise ValidationError(f"{name}: probe touches the boundary of G")
    if not _connected(mask, diagonal=True):
        raise ValidationError(f"{name}: probe mask is disconnected")
    rows = np.any(mask, axis=1).nonzero()[0]
    cols = np.any(mask, axis=0).nonzero()[0]
    box = mask[rows[0]:rows[-1] + 1, cols[0]:cols[-1] + 1]
    if not _connected(~box, diagonal=False):
        raise ValidationError(
            f"{name}: probe complement splits inside its bounding box "
            "(boundary is not Jordan-like)"
        )
    return Probe(name=name, mask=mask)


def auto_probes(grid: GridPlane) -> list[Probe]:
    """Expanding concentric square annuli centered on the window.

    Candidates that leave G or fail probe validation are dropped, so domains
    with punctures or narrow windows simply get a smaller family.
    """
    h, w = grid.cells.shape
    r0, c0 = h // 2, w // 2
    probes: list[Probe] = []
    max_radius = (min(h, w) - 1) // 2 - 1
    radius = 2
    index = 0
    while radius <= max_radius:
        rows = np.abs(np.arange(h)[:, None] - r0)
        cols = np.abs(np.arange(w)[None, :] - c0)
        ring = np.maximum(rows, cols) == radius
        try:
            probes.append(validate_probe(grid, ring, name=f"auto-ring-{index}"))
            index += 1
        except ValidationError:
            pass
        radius = radius * 2 if radius * 2 <= max_radius else radius + max(1, max_radius // 4)
        if index >= 4:
            break
    return probes


def _gather_probes(grid: GridPlane, probes) -> list[Probe]:
    family: list[Probe]
    if probes is None or (isinstance(probes, str) and probes == "auto"):
        family = auto_probes(grid)
    elif isinstance(probes, str):
        raise ValidationError(f"unknown probe policy {probes!r}")
    else:
        family = []
        for i, p in enumerate(probes):
            if isinstance(p, Probe):
                family.append(validate_probe(grid, p.mask, p.name))
            else:
                family.append(validate_probe(grid, np.asarray(p), name=f"probe-{i}"))
    marked = grid.class_mask(CellClass.K_PROBE)
    if marked.any():
        family.append(validate_probe(grid, marked, name="grid-K"))
    return family


@dataclass(frozen=True)
class ArakeljanVerdict:
    """Outcome of the two hole conditions for one subject.

    ``label`` is "fails" or "passes-probes" (a pass is evidence, not proof:
    only the listed probes were tried).  ``failed_condition`` is 1 when the
    subject has a G-hole, 2 when some probe traps a hole whose closure
    reaches the boundary of G, else None.
    """

    label: str
    failed_condition: int | None
    witnesses: tuple[HoleReport, ...]
    probe_names: tuple[str, ...]
    failing_probe: str | None = None

    @property
    def passed(self) -> bool:
        return self.label == "passes-probes"

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "failed_condition": self.failed_condition,
            "witnesses": [w.to_json() for w in self.witnesses],
            "probes_tested": list(self.probe_names),
            "failing_probe": self.failing_probe,
        }


def is_arakeljan(grid: GridPlane, subject, probes="auto") -> ArakeljanVerdict:
    """Check both hole conditions for the subject set at raster fidelity."""
    subject_mask = grid.subject_mask(subject)
    family = _gather_probes(grid, probes)
    names = tuple(p.name for p in family)

    reports = classify_holes(grid, subject_mask)
    g_holes = [rep for rep in reports if rep.is_g_hole]
    if g_holes:
        return ArakeljanVerdict(
            label="fails",
            failed_condition=1,
            witnesses=tuple(g_holes),
            probe_names=names,
        )

    outside = grid.outside_mask
    for probe in family:
        union_mask = subject_mask | probe.mask
        labeling = label_components(grid, union_mask)
        offenders: list[HoleReport] = []
        for comp in labeling.components:
            rep = _report_for(grid, comp)
            if not rep.is_g_hole:
                continue
            hole = labeling.component_mask(comp.component_id)
            # Closed cell squares meet exactly when cells are 8-adjacent, so
            # this is the raster reading of "the hole's closure meets the
            # boundary of G".  4-adjacent contact cannot occur here: it would
            # have disqualified the component as a G-hole already.
            if np.any(_dilate8(hole) & outside):
                offenders.append(rep)
        if offenders:
            return ArakeljanVerdict(
                label="fails",
                failed_condition=2,
                witnesses=tuple(offenders),
                probe_names=names,
                failing_probe=probe.name,
            )
    return ArakeljanVerdict(
        label="passes-probes",
        failed_condition=None,
        witnesses=(),
        probe_names=names,
    )


# --- independence and the union law ----------------------------------------


@dataclass(frozen=True)
class IndependenceReport:
    """Whether strict holes of E and F intersect in a G-hole."""

    independent: bool
    witness: HoleReport | None
    witness_pair: tuple[int, int] | None  # (E component id, F component id)

    def to_json(self) -> dict:
        return {
            "independent": self.independent,
            "witness_component": None if self.witness is None else self.witness.component_id,
            "witness": None if self.witness is None else self.witness.to_json(),
            "witness_pair": None if self.witness_pair is None else list(self.witness_pair),
        }


def hole_independence(grid: GridPlane, e_subject="E", f_subject="F") -> IndependenceReport:
    """Check that no strict hole of E meets a strict hole of F in a G-hole.

    Components of G minus (E union F) are exactly the components of the
    pairwise intersections of complement components of E and F, so one
    labeling of the union complement suffices: a union component that is a
    G-hole while sitting inside strict holes of both E and F is a witness of
    dependence.
    """
    e_mask = grid.subject_mask(e_subject)
    f_mask = grid.subject_mask(f_subject)
    if np.any(e_mask & f_mask):
        raise ValidationError("E and F overlap; independence needs disjoint sets")
    lab_e = label_components(grid, e_mask)
    lab_f = label_components(grid, f_mask)
    strict_e = {
        comp.component_id: _report_for(grid, comp).is_strict_hole
        for comp in lab_e.components
    }
    strict_f = {
        comp.component_id: _report_for(grid, comp).is_strict_hole
        for comp in lab_f.components
    }
    union_lab = label_components(grid, e_mask | f_mask)
    for comp in union_lab.components:
        rep = _report_for(grid, comp)
        if not rep.is_g_hole:
            continue
        r, c = comp.first_cell
        e_id = int(lab_e.labels[r, c])
        f_id = int(lab_f.labels[r, c])
        if strict_e.get(e_id, False) and strict_f.get(f_id, False):
            return IndependenceReport(
                independent=False, witness=rep, witness_pair=(e_id, f_id)
            )
    return IndependenceReport(independent=True, witness=None, witness_pair=None)


@dataclass(frozen=True)
class UnionCheckReport:
    """Both sets, their independence, their union, and the union law.

    When E and F both pass probes and are independent, the union must pass;
    a violation is flagged as an inconsistency (it would be a bug, not a
    mathematical possibility).
    """

    e_verdict: ArakeljanVerdict
    f_verdict: ArakeljanVerdict
    independence: IndependenceReport
    union_verdict: ArakeljanVerdict
    lemma_consistent: bool
    note: str | None

    def to_json(self) -> dict:
        return {
            "e": self.e_verdict.to_json(),
            "f": self.f_verdict.to_json(),
            "independence": self.independence.to_json(),
            "union": self.union_verdict.to_json(),
            "lemma_consistent": self.lemma_consistent,
            "note": self.note,
        }


def union_check(grid: GridPlane, e_subject="E", f_subject="F", probes="auto") -> UnionCheckReport:
    e_verdict = is_arakeljan(grid, e_subject, probes)
    f_verdict = is_arakeljan(grid, f_subject, probes)
    independence = hole_independence(grid, e_subject, f_subject)
    e_mask = grid.subject_mask(e_subject)
    f_mask = grid.subject_mask(f_subject)
    union_verdict = is_arakeljan(grid, e_mask | f_mask, probes)
    premises = e_verdict.passed and f_verdict.passed and independence.independent
    consistent = (not premises) or union_verdict.passed
    note = None
    if not consistent:
        note = (
            "inconsistency: union fails although both parts pass probes and "
            "are independent; this indicates a defect in the hole logic"
        )
    return UnionCheckReport(
        e_verdict=e_verdict,
        f_verdict=f_verdict,
        independence=independence,
        union_verdict=union_verdict,
        lemma_consistent=consistent,
        note=note,
    )
