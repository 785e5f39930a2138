"""Dataset manifest: one row per case pointing at the image, an optional
body mask, and the tumour/background ROI corners.

Columns: case_id,image_path,mask_path,tumour_x,tumour_y,bg_x,bg_y,roi_side
Relative paths resolve against the manifest's directory.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from ..errors import ManifestError
from ..raster import RoiKind, RoiSpec

COLUMNS = ("case_id", "image_path", "mask_path", "tumour_x", "tumour_y",
           "bg_x", "bg_y", "roi_side")


@dataclass(frozen=True)
class CaseManifestEntry:
    case_id: str
    image_path: Path
    mask_path: Path | None
    tumour_roi: RoiSpec
    background_roi: RoiSpec


def read_manifest(path: str | Path) -> list[CaseManifestEntry]:
    path = Path(path)
    base = path.parent
    entries: list[CaseManifestEntry] = []
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != COLUMNS:
            raise ManifestError(
                f"{path}: expected header {','.join(COLUMNS)}, got {reader.fieldnames}"
            )
        for lineno, row in enumerate(reader, 2):
            try:
                side = int(row["roi_side"])
                tumour = RoiSpec(int(row["tumour_x"]), int(row["tumour_y"]),
                                 side, RoiKind.TUMOUR)
                background = RoiSpec(int(row["bg_x"]), int(row["bg_y"]),
                                     side, RoiKind.BACKGROUND)
            except (ValueError, TypeError) as exc:
                raise ManifestError(f"{path}:{lineno}: bad ROI fields: {exc}") from exc
            mask = row["mask_path"].strip()
            entries.append(CaseManifestEntry(
                case_id=row["case_id"],
                image_path=base / row["image_path"],
                mask_path=base / mask if mask else None,
                tumour_roi=tumour,
                background_roi=background,
            ))
    if not entries:
        raise ManifestError(f"{path}: manifest has no cases")
    return entries


def write_manifest(entries: list[CaseManifestEntry], path: str | Path) -> None:
    path = Path(path)
    base = path.parent

    def rel(p: Path | None) -> str:
        if p is None:
            return ""
        try:
            return p.relative_to(base).as_posix()
        except ValueError:
            return str(p)

    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(COLUMNS)
        for e in entries:
            writer.writerow([
                e.case_id, rel(e.image_path), rel(e.mask_path),
                e.tumour_roi.origin_x, e.tumour_roi.origin_y,
                e.background_roi.origin_x, e.background_roi.origin_y,
                e.tumour_roi.side,
            ])
