"""Survey data ingestion: expert matrix CSV files and study bundle documents.

A study bundle is a JSON document carrying the scale, criterion and
respondent metadata, and either the raw expert matrices or a precomputed
rough group matrix (for studies that publish only the aggregate).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import BundleValidationError, ParseError
from .pipeline import ExpertMatrix, RoughMatrix, Scale

CATEGORIES = ("internal", "external", "custom")
ROLES = ("practitioner", "academic")


@dataclass(frozen=True)
class CriterionMeta:
    id: str
    name: str = ""
    category: str = "custom"
    description: str = ""


@dataclass(frozen=True)
class RespondentMeta:
    id: str
    role: str = "practitioner"
    description: str = ""


@dataclass
class StudyBundle:
    criteria: list[CriterionMeta]
    respondents: list[RespondentMeta]
    scale: Scale = field(default_factory=Scale)
    matrices: dict[str, ExpertMatrix] | None = None
    rough_group: RoughMatrix | None = None

    @property
    def criterion_ids(self) -> list[str]:
        return [c.id for c in self.criteria]

    @property
    def n(self) -> int:
        return len(self.criteria)


def _decode(data: bytes | str) -> str:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return data.replace("\r\n", "\n").replace("\r", "\n")


def parse_expert_csv(data: bytes | str, expert_id: str = "expert", scale: Scale = Scale()) -> ExpertMatrix:
    """Parse one expert's matrix: header of criterion ids, then rows of ``id,v1,...,vn``."""
    text = _decode(data)
    rows = [row for row in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in row)]
    if not rows:
        raise ParseError("empty CSV file")
    header = [c.strip() for c in rows[0]]
    if header and header[0] == "":
        header = header[1:]
    ids = header
    n = len(ids)
    if n == 0:
        raise ParseError("header row carries no criterion ids")
    if len(rows) - 1 != n:
        raise ParseError(f"expected {n} data rows for {n} criteria, found {len(rows) - 1}")
    values = np.zeros((n, n), dtype=int)
    for i, row in enumerate(rows[1:], start=1):
        cells = [c.strip() for c in row]
        if len(cells) != n + 1:
            raise ParseError(f"row {i}: expected {n + 1} cells, found {len(cells)}")
        if cells[0] != ids[i - 1]:
            raise ParseError(f"row {i}: row id {cells[0]!r} does not match header id {ids[i - 1]!r}")
        for j, cell in enumerate(cells[1:]):
            try:
                v = int(cell)
            except ValueError:
                raise ParseError(f"row {i}, column {ids[j]}: non-integer cell {cell!r}") from None
            if not scale.contains(v):
                raise ParseError(
                    f"row {i}, column {ids[j]}: value {v} outside scale "
                    f"{scale.minimum}..{scale.maximum}"
                )
            if i - 1 == j and v != 0:
                raise ParseError(f"row {i}, column {ids[j]}: diagonal must be 0, got {v}")
            values[i - 1, j] = v
    return ExpertMatrix(expert_id=expert_id, values=values, scale=scale)


def _validate_bundle_dict(doc: dict) -> tuple[StudyBundle | None, list[str]]:
    errors: list[str] = []

    scale_doc = doc.get("scale", {"min": 0, "max": 4})
    if not isinstance(scale_doc, dict):
        errors.append("scale: must be an object with min/max")
        scale_doc = {}
    try:
        scale = Scale(int(scale_doc.get("min", 0)), int(scale_doc.get("max", 4)))
    except Exception as exc:
        errors.append(f"scale: {exc}")
        scale = Scale()

    criteria: list[CriterionMeta] = []
    seen = set()
    raw_criteria = doc.get("criteria", [])
    if not isinstance(raw_criteria, list) or not all(isinstance(c, dict) for c in raw_criteria):
        errors.append("criteria: must be a list of objects")
        raw_criteria = []
    if not raw_criteria:
        errors.append("criteria: list is empty or missing")
    for idx, c in enumerate(raw_criteria):
        cid = str(c.get("id", "")).strip()
        if not cid:
            errors.append(f"criteria[{idx}]: missing id")
            continue
        if cid in seen:
            errors.append(f"criteria[{idx}]: duplicate id {cid!r}")
            continue
        seen.add(cid)
        cat = c.get("category", "custom")
        if cat not in CATEGORIES:
            errors.append(f"criteria[{idx}] ({cid}): unknown category {cat!r}")
        criteria.append(CriterionMeta(cid, c.get("name", ""), cat, c.get("description", "")))

    respondents: list[RespondentMeta] = []
    seen_r = set()
    raw_respondents = doc.get("respondents", [])
    if not isinstance(raw_respondents, list) or not all(isinstance(r, dict) for r in raw_respondents):
        errors.append("respondents: must be a list of objects")
        raw_respondents = []
    for idx, r in enumerate(raw_respondents):
        rid = str(r.get("id", "")).strip()
        if not rid:
            errors.append(f"respondents[{idx}]: missing id")
            continue
        if rid in seen_r:
            errors.append(f"respondents[{idx}]: duplicate id {rid!r}")
            continue
        seen_r.add(rid)
        role = r.get("role", "practitioner")
        if role not in ROLES:
            errors.append(f"respondents[{idx}] ({rid}): unknown role {role!r}")
        respondents.append(RespondentMeta(rid, role, r.get("description", "")))

    n = len(criteria)
    has_raw = "matrices" in doc
    has_agg = "rough_group" in doc
    if has_raw == has_agg:
        errors.append("bundle must carry exactly one of 'matrices' or 'rough_group'")

    matrices: dict[str, ExpertMatrix] | None = None
    if has_raw:
        matrices = {}
        raw = doc["matrices"]
        if not isinstance(raw, dict):
            errors.append("matrices: must map respondent id to an n x n integer grid")
            raw = {}
        for rid in raw:
            if rid not in seen_r:
                errors.append(f"matrices[{rid}]: dangling respondent reference")
        for r in respondents:
            if r.id not in raw:
                errors.append(f"matrices: no matrix for respondent {r.id}")
        for rid, grid in raw.items():
            try:
                arr = np.asarray(grid, dtype=int)
                if arr.shape != (n, n):
                    errors.append(f"matrices[{rid}]: shape {arr.shape} does not match {n} criteria")
                    continue
                matrices[rid] = ExpertMatrix(expert_id=str(rid), values=arr, scale=scale)
            except Exception as exc:
                errors.append(f"matrices[{rid}]: {exc}")

    rough_group: RoughMatrix | None = None
    if has_agg:
        try:
            arr = np.asarray(doc["rough_group"], dtype=float)
            if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
                errors.append("rough_group: must be an n x n grid of [lower, upper] pairs")
            elif n and arr.shape[0] != n:
                errors.append(f"rough_group: is {arr.shape[0]}x{arr.shape[1]} but {n} criteria given")
            else:
                rough_group = RoughMatrix(arr[:, :, 0], arr[:, :, 1])
        except BundleValidationError:
            raise
        except Exception as exc:
            errors.append(f"rough_group: {exc}")

    if errors:
        return None, errors
    return (
        StudyBundle(
            criteria=criteria,
            respondents=respondents,
            scale=scale,
            matrices=matrices,
            rough_group=rough_group,
        ),
        [],
    )


def parse_study_bundle(data: bytes | str) -> StudyBundle:
    """Parse and fully cross-validate a bundle document.

    Raises BundleValidationError listing every violation found, not just
    the first.
    """
    try:
        text = _decode(data)
    except UnicodeDecodeError as exc:
        raise BundleValidationError([f"not valid UTF-8: {exc}"]) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleValidationError([f"not valid JSON: {exc}"]) from None
    if not isinstance(doc, dict):
        raise BundleValidationError(["top-level document must be an object"])
    bundle, errors = _validate_bundle_dict(doc)
    if errors:
        raise BundleValidationError(errors)
    assert bundle is not None
    return bundle


def write_bundle(bundle: StudyBundle) -> bytes:
    """Serialize a bundle; parse(write(b)) is structurally equal to b."""
    doc: dict = {
        "scale": {"min": bundle.scale.minimum, "max": bundle.scale.maximum},
        "criteria": [
            {"id": c.id, "name": c.name, "category": c.category, "description": c.description}
            for c in bundle.criteria
        ],
        "respondents": [
            {"id": r.id, "role": r.role, "description": r.description}
            for r in bundle.respondents
        ],
    }
    if bundle.matrices is not None:
        doc["matrices"] = {rid: m.values.tolist() for rid, m in bundle.matrices.items()}
    if bundle.rough_group is not None:
        rg = bundle.rough_group
        doc["rough_group"] = [
            [[rg.lower[i, j], rg.upper[i, j]] for j in range(rg.n)] for i in range(rg.n)
        ]
    return (json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=False) + "\n").encode("utf-8")
