"""PDF ingestion adapter.

The pipeline's real contract is the span-record format in :mod:`spans`;
PDF parsing is a replaceable adapter behind :func:`ingest_spans`.  When
PyMuPDF is importable it is used for fidelity.  Otherwise a built-in
reader handles the common simple case: non-encrypted PDFs with plain or
FlateDecode content streams and single-byte-encoded fonts, which covers
generated fixtures and most text-first scientific PDFs' text operators.
Glyph widths are approximated (0.5 em), so built-in geometry is coarse;
extracted text is exact.
"""

from __future__ import annotations

import re
import zlib
from pathlib import Path

from .spans import PageGeometry, SpanDocument, TextSpan

PDF_MAGIC = b"%PDF-"

_OBJ_RE = re.compile(rb"(\d+)\s+\d+\s+obj(.*?)endobj", re.S)
_STREAM_START_RE = re.compile(rb"stream\r?\n")
_STREAM_RE = re.compile(rb"stream\r?\n(.*?)\r?\n?endstream", re.S)


class PdfParseError(ValueError):
    pass


def looks_like_pdf(data: bytes) -> bool:
    return data[:5] == PDF_MAGIC


def ingest_spans(source, doc_id: str | None = None) -> SpanDocument:
    """Load spans from PDF bytes, a PDF file, a span-record file, or a dict."""
    if isinstance(source, dict):
        return SpanDocument.from_dict(source)
    if isinstance(source, bytes):
        if not looks_like_pdf(source):
            raise PdfParseError("bytes input is not a PDF")
        return extract_pdf_spans(source, doc_id=doc_id or "pdf")
    path = Path(source)
    data = path.read_bytes()
    if looks_like_pdf(data):
        return extract_pdf_spans(data, doc_id=doc_id or path.stem)
    try:
        import json

        return SpanDocument.from_dict(json.loads(data.decode("utf-8")))
    except Exception as exc:
        raise PdfParseError(f"{path}: neither a PDF nor a span-record file: {exc}") from exc


def extract_pdf_spans(data: bytes, doc_id: str) -> SpanDocument:
    if not looks_like_pdf(data):
        raise PdfParseError("missing PDF header")
    try:
        import fitz  # PyMuPDF, optional

        return _extract_with_pymupdf(data, doc_id)
    except ImportError:
        return _extract_builtin(data, doc_id)


def _extract_with_pymupdf(data: bytes, doc_id: str) -> SpanDocument:
    import fitz

    doc = fitz.open(stream=data, filetype="pdf")
    pages: list[PageGeometry] = []
    spans: list[TextSpan] = []
    for page_index in range(len(doc)):
        page = doc[page_index]
        number = page_index + 1
        pages.append(PageGeometry(number=number, width=page.rect.width, height=page.rect.height))
        for block in page.get_text("dict")["blocks"]:
            for line in block.get("lines", []):
                for rec in line.get("spans", []):
                    if not rec["text"].strip():
                        continue
                    x0, y0, x1, y1 = rec["bbox"]
                    if x1 <= x0 or y1 <= y0:
                        continue
                    spans.append(
                        TextSpan(
                            text=rec["text"],
                            page=number,
                            bbox=(x0, y0, x1, y1),
                            font_name=rec["font"],
                            font_size=rec["size"],
                        )
                    )
    doc.close()
    return SpanDocument(doc_id=doc_id, pages=pages, spans=spans)


# ----------------------------------------------------------------------
# Built-in reader


def _parse_objects(data: bytes) -> dict[int, bytes]:
    return {int(m.group(1)): m.group(2) for m in _OBJ_RE.finditer(data)}


def _filters(body: bytes) -> list[bytes]:
    m = re.search(rb"/Filter\s*(\[[^\]]*\]|/\w+)", body)
    if m is None:
        return []
    return re.findall(rb"/(\w+)", m.group(1))


def _object_stream(body: bytes) -> bytes | None:
    start = _STREAM_START_RE.search(body)
    if start is None:
        return None
    length = re.search(rb"/Length\s+(\d+)(?!\s+\d+\s+R)", body[: start.start()])
    if length is not None:
        raw = body[start.end() : start.end() + int(length.group(1))]
    else:
        m = _STREAM_RE.search(body)
        if m is None:
            return None
        raw = m.group(1)
    for name in _filters(body):
        if name == b"ASCII85Decode":
            import base64

            data = re.sub(rb"\s", b"", raw)
            if data.endswith(b"~>"):
                data = data[:-2]
            raw = base64.a85decode(data)
        elif name == b"FlateDecode":
            raw = zlib.decompress(raw)
        elif name == b"ASCIIHexDecode":
            data = re.sub(rb"[\s>]", b"", raw)
            raw = bytes.fromhex(data.decode("ascii"))
        else:
            raise PdfParseError(f"unsupported stream filter {name.decode('latin-1')}")
    return raw


def _find_ref(body: bytes, key: bytes) -> int | None:
    m = re.search(key + rb"\s+(\d+)\s+\d+\s+R", body)
    return int(m.group(1)) if m else None


def _find_refs_array(body: bytes, key: bytes) -> list[int]:
    single = _find_ref(body, key)
    if single is not None:
        return [single]
    m = re.search(key + rb"\s*\[(.*?)\]", body, re.S)
    if m is None:
        return []
    return [int(x) for x in re.findall(rb"(\d+)\s+\d+\s+R", m.group(1))]


def _media_box(body: bytes) -> tuple[float, float] | None:
    m = re.search(rb"/MediaBox\s*\[\s*([\d.+-]+)\s+([\d.+-]+)\s+([\d.+-]+)\s+([\d.+-]+)\s*\]", body)
    if m is None:
        return None
    x0, y0, x1, y1 = (float(m.group(i)) for i in range(1, 5))
    return (x1 - x0, y1 - y0)


def _font_map(body: bytes, objects: dict[int, bytes]) -> dict[bytes, str]:
    """Resource font tag (/F1) -> base font name; the /Font entry may be an
    inline dictionary or an indirect reference to one."""
    fonts: dict[bytes, str] = {}
    m = re.search(rb"/Font\s*<<(.*?)>>", body, re.S)
    if m is not None:
        scope = m.group(1)
    else:
        ref = _find_ref(body, rb"/Font")
        scope = objects.get(ref, b"") if ref is not None else body
    for tag, ref in re.findall(rb"/(\w+)\s+(\d+)\s+\d+\s+R", scope):
        font_obj = objects.get(int(ref), b"")
        base = re.search(rb"/BaseFont\s*/([#\w+-]+)", font_obj)
        if base:
            fonts[tag] = base.group(1).decode("latin-1")
    return fonts


def _decode_pdf_string(raw: bytes) -> str:
    out = bytearray()
    i = 0
    while i < len(raw):
        ch = raw[i]
        if ch == 0x5C and i + 1 < len(raw):  # backslash
            nxt = raw[i + 1]
            simple = {0x6E: 0x0A, 0x72: 0x0D, 0x74: 0x09, 0x62: 0x08, 0x66: 0x0C}
            if nxt in simple:
                out.append(simple[nxt])
                i += 2
            elif nxt in (0x28, 0x29, 0x5C):
                out.append(nxt)
                i += 2
            elif 0x30 <= nxt <= 0x37:
                j = i + 1
                digits = b""
                while j < len(raw) and len(digits) < 3 and 0x30 <= raw[j] <= 0x37:
                    digits += bytes([raw[j]])
                    j += 1
                out.append(int(digits, 8) & 0xFF)
                i = j
            elif nxt in (0x0A, 0x0D):  # line continuation
                i += 2
            else:
                out.append(nxt)
                i += 2
        else:
            out.append(ch)
            i += 1
    return out.decode("latin-1")


_CONTENT_TOKEN_RE = re.compile(
    rb"\((?:\\.|[^\\()])*\)"  # literal string
    rb"|<[0-9A-Fa-f\s]*>"  # hex string
    rb"|\[|\]"
    rb"|/[^\s/<>()\[\]]+"
    rb"|[-+]?[\d.]+"
    rb"|[A-Za-z'\"*]+"
)


def _tokenize_content(stream: bytes):
    for m in _CONTENT_TOKEN_RE.finditer(stream):
        yield m.group(0)


class _TextState:
    __slots__ = ("x", "y", "leading", "font", "size", "line_x", "line_y")

    def __init__(self) -> None:
        self.x = 0.0
        self.y = 0.0
        self.line_x = 0.0
        self.line_y = 0.0
        self.leading = 0.0
        self.font = "unknown"
        self.size = 10.0


def _extract_builtin(data: bytes, doc_id: str) -> SpanDocument:
    objects = _parse_objects(data)
    if not objects:
        raise PdfParseError("no objects found")

    page_ids = [
        num
        for num, body in objects.items()
        if re.search(rb"/Type\s*/Page\b", body) and not re.search(rb"/Type\s*/Pages\b", body)
    ]
    if not page_ids:
        raise PdfParseError("no pages found")
    # Page order: follow the page tree when present, else object order.
    ordered = _page_tree_order(objects, set(page_ids)) or sorted(page_ids)

    pages: list[PageGeometry] = []
    spans: list[TextSpan] = []
    for number, obj_id in enumerate(ordered, start=1):
        body = objects[obj_id]
        size = _media_box(body)
        if size is None:
            parent = _find_ref(body, rb"/Parent")
            if parent is not None and parent in objects:
                size = _media_box(objects[parent])
        width, height = size if size else (612.0, 792.0)
        pages.append(PageGeometry(number=number, width=width, height=height))

        fonts = _font_map(body, objects)
        if not fonts:
            parent = _find_ref(body, rb"/Parent")
            if parent is not None and parent in objects:
                fonts = _font_map(objects[parent], objects)
        for content_id in _find_refs_array(body, rb"/Contents"):
            stream = _object_stream(objects.get(content_id, b""))
            if stream is None:
                continue
            spans.extend(_run_content(stream, number, height, fonts))
    return SpanDocument(doc_id=doc_id, pages=pages, spans=spans)


def _page_tree_order(objects: dict[int, bytes], page_ids: set[int]) -> list[int]:
    for body in objects.values():
        if re.search(rb"/Type\s*/Pages\b", body):
            kids = _find_refs_array(body, rb"/Kids")
            ordered = [k for k in kids if k in page_ids]
            if len(ordered) == len(page_ids):
                return ordered
    return []


def _run_content(stream: bytes, page: int, page_height: float, fonts: dict[bytes, str]):
    state = _TextState()
    stack: list = []
    spans: list[TextSpan] = []
    in_array = False
    array_parts: list[str] = []

    def emit(text: str) -> None:
        text = text.replace("\x00", "")
        if not text.strip():
            state.x += 0.5 * state.size * len(text)
            return
        width = max(0.5 * state.size * len(text), 0.1)
        top = page_height - state.y - 0.8 * state.size
        bottom = page_height - state.y + 0.2 * state.size
        spans.append(
            TextSpan(
                text=text,
                page=page,
                bbox=(state.x, top, state.x + width, bottom),
                font_name=state.font,
                font_size=state.size,
            )
        )
        state.x += width

    for token in _tokenize_content(stream):
        if token == b"[":
            in_array = True
            array_parts = []
        elif token == b"]":
            in_array = False
            stack.append(("array", array_parts))
        elif token.startswith(b"("):
            text = _decode_pdf_string(token[1:-1])
            if in_array:
                array_parts.append(text)
            else:
                stack.append(("str", text))
        elif token.startswith(b"<"):
            hexdigits = re.sub(rb"\s", b"", token[1:-1])
            if len(hexdigits) % 2:
                hexdigits += b"0"
            text = bytes.fromhex(hexdigits.decode("ascii")).decode("latin-1")
            if in_array:
                array_parts.append(text)
            else:
                stack.append(("str", text))
        elif token.startswith(b"/"):
            stack.append(("name", token[1:]))
        elif re.fullmatch(rb"[-+]?[\d.]+", token):
            if in_array:
                continue  # kerning adjustments: ignored (widths approximate)
            stack.append(("num", float(token)))
        else:
            op = token
            if op == b"BT":
                state.x = state.y = state.line_x = state.line_y = 0.0
            elif op == b"Tf" and len(stack) >= 2:
                size = stack.pop()[1]
                name = stack.pop()[1]
                state.size = float(size)
                state.font = fonts.get(name, name.decode("latin-1") if isinstance(name, bytes) else str(name))
            elif op in (b"Td", b"TD") and len(stack) >= 2:
                ty = float(stack.pop()[1])
                tx = float(stack.pop()[1])
                state.line_x += tx
                state.line_y += ty
                state.x, state.y = state.line_x, state.line_y
                if op == b"TD":
                    state.leading = -ty
            elif op == b"Tm" and len(stack) >= 6:
                f = float(stack.pop()[1])
                e = float(stack.pop()[1])
                stack = stack[:-4]
                state.line_x, state.line_y = e, f
                state.x, state.y = e, f
            elif op == b"TL" and stack:
                state.leading = float(stack.pop()[1])
            elif op == b"T*":
                state.line_y -= state.leading
                state.x, state.y = state.line_x, state.line_y
            elif op == b"Tj" and stack:
                kind, value = stack.pop()
                if kind == "str":
                    emit(value)
            elif op == b"TJ" and stack:
                kind, value = stack.pop()
                if kind == "array":
                    emit("".join(value))
            elif op == b"'" and stack:
                kind, value = stack.pop()
                state.line_y -= state.leading
                state.x, state.y = state.line_x, state.line_y
                if kind == "str":
                    emit(value)
            elif op == b'"' and len(stack) >= 3:
                kind, value = stack.pop()
                stack = stack[:-2]
                state.line_y -= state.leading
                state.x, state.y = state.line_x, state.line_y
                if kind == "str":
                    emit(value)
            else:
                stack.clear()
    return spans
