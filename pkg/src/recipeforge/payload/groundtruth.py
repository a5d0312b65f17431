"""Scoring layout output against rectangle-annotation ground truth.

Truth regions carry one of three labels: ``header`` (running margin text),
``heading`` (section titles), ``paragraph`` (body blocks).  A prediction
matches a truth region when they share a page and overlap with IoU >= 0.5;
matching is greedy by descending IoU and one-to-one.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

from scipy.stats import kendalltau

from .spans import BBox

TRUTH_LABELS = ("header", "heading", "paragraph")
IOU_THRESHOLD = 0.5


@dataclass(frozen=True)
class GroundTruthRegion:
    page: int
    bbox: BBox
    label: str

    def __post_init__(self) -> None:
        if self.label not in TRUTH_LABELS:
            raise ValueError(f"unknown region label {self.label!r}")


@dataclass(frozen=True)
class PredictedRegion:
    page: int
    bbox: BBox
    label: str


@dataclass
class LayoutScore:
    accuracy: float
    per_class: dict[str, dict[str, float]]
    n_pred: int
    n_truth: int
    matches: list[tuple[int, int, float]] = field(default_factory=list)  # (pred, truth, iou)

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "per_class": self.per_class,
            "n_pred": self.n_pred,
            "n_truth": self.n_truth,
        }


def iou(a: BBox, b: BBox) -> float:
    ix0, iy0 = max(a[0], b[0]), max(a[1], b[1])
    ix1, iy1 = min(a[2], b[2]), min(a[3], b[3])
    if ix1 <= ix0 or iy1 <= iy0:
        return 0.0
    inter = (ix1 - ix0) * (iy1 - iy0)
    area_a = (a[2] - a[0]) * (a[3] - a[1])
    area_b = (b[2] - b[0]) * (b[3] - b[1])
    return inter / (area_a + area_b - inter)


def match_regions(
    predictions: list[PredictedRegion],
    truths: list[GroundTruthRegion],
    threshold: float = IOU_THRESHOLD,
) -> list[tuple[int, int, float]]:
    """One-to-one greedy matching by descending IoU, same page only."""
    candidates = []
    for i, p in enumerate(predictions):
        for j, t in enumerate(truths):
            if p.page != t.page:
                continue
            value = iou(p.bbox, t.bbox)
            if value >= threshold:
                candidates.append((value, i, j))
    candidates.sort(key=lambda c: (-c[0], c[1], c[2]))
    used_p: set[int] = set()
    used_t: set[int] = set()
    matches = []
    for value, i, j in candidates:
        if i in used_p or j in used_t:
            continue
        used_p.add(i)
        used_t.add(j)
        matches.append((i, j, value))
    return matches


def score_against_ground_truth(
    predictions: list[PredictedRegion],
    truths: list[GroundTruthRegion],
    threshold: float = IOU_THRESHOLD,
) -> LayoutScore:
    """Accuracy and per-class precision/recall/F1 from the match table.

    accuracy = label-correct matches / (matches + unmatched on either side).
    Per class: a label-correct match is a TP; a prediction matched to a
    different label or left unmatched is an FP; truth regions matched with
    the wrong label or unmatched are FNs.
    """
    matches = match_regions(predictions, truths, threshold)
    tp: dict[str, int] = {label: 0 for label in TRUTH_LABELS}
    fp: dict[str, int] = {label: 0 for label in TRUTH_LABELS}
    fn: dict[str, int] = {label: 0 for label in TRUTH_LABELS}

    matched_p = {i for i, _, _ in matches}
    matched_t = {j for _, j, _ in matches}
    correct = 0
    for i, j, _ in matches:
        pl, tl = predictions[i].label, truths[j].label
        if pl == tl:
            tp[pl] += 1
            correct += 1
        else:
            fp[pl] += 1
            fn[tl] += 1
    for i, p in enumerate(predictions):
        if i not in matched_p:
            fp[p.label] += 1
    for j, t in enumerate(truths):
        if j not in matched_t:
            fn[t.label] += 1

    per_class = {}
    for label in TRUTH_LABELS:
        precision = tp[label] / (tp[label] + fp[label]) if tp[label] + fp[label] else 0.0
        recall = tp[label] / (tp[label] + fn[label]) if tp[label] + fn[label] else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class[label] = {"precision": precision, "recall": recall, "f1": f1}

    denominator = len(matches) + (len(predictions) - len(matched_p)) + (len(truths) - len(matched_t))
    accuracy = correct / denominator if denominator else 1.0
    return LayoutScore(
        accuracy=accuracy,
        per_class=per_class,
        n_pred=len(predictions),
        n_truth=len(truths),
        matches=matches,
    )


def reading_order_tau(
    predictions_in_order: list[PredictedRegion],
    truths_in_order: list[GroundTruthRegion],
    threshold: float = IOU_THRESHOLD,
) -> float:
    """Kendall tau between predicted and annotated reading order.

    Computed over geometrically matched regions; with fewer than two
    matches the order is vacuously right and tau is 1.0, so the metric is
    never undefined.
    """
    matches = match_regions(predictions_in_order, truths_in_order, threshold)
    sequence = [j for _, j, _ in sorted(matches, key=lambda m: m[0])]
    if len(sequence) < 2:
        return 1.0
    tau, _ = kendalltau(range(len(sequence)), sequence)
    return float(tau)


def load_truth_file(path: str | Path) -> tuple[str, list[GroundTruthRegion]]:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    regions = [
        GroundTruthRegion(page=int(r["page"]), bbox=tuple(float(v) for v in r["bbox"]), label=r["label"])
        for r in payload["regions"]
    ]
    return payload["doc_id"], regions


def save_truth_file(path: str | Path, doc_id: str, regions: list[GroundTruthRegion]) -> None:
    payload = {
        "doc_id": doc_id,
        "regions": [{"page": r.page, "bbox": list(r.bbox), "label": r.label} for r in regions],
    }
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def regions_from_labelimg_xml(xml_text: str, page: int) -> list[GroundTruthRegion]:
    """Convert one page's rectangle annotations from the labelImg/VOC XML
    produced by common image-labeling tools."""
    root = ET.fromstring(xml_text)
    regions = []
    for obj in root.iter("object"):
        name = obj.findtext("name", default="").strip().lower()
        if name not in TRUTH_LABELS:
            raise ValueError(f"unknown annotation label {name!r}")
        box = obj.find("bndbox")
        if box is None:
            continue
        bbox = (
            float(box.findtext("xmin")),
            float(box.findtext("ymin")),
            float(box.findtext("xmax")),
            float(box.findtext("ymax")),
        )
        regions.append(GroundTruthRegion(page=page, bbox=bbox, label=name))
    return regions
