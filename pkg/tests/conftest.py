import re
from pathlib import Path

import pytest

from realhyper.full_model import index

DATA = Path(__file__).parent / "data"

# printed tables: file stem -> (N, generator tuple)
PRINTED = {
    "sign": (1, (1,)),
    "h_3_5": (3, (3, 5)),
    "h_5_6": (3, (5, 6)),
    "h_6_3": (3, (6, 3)),
    "h_104_61_27_30": (7, (104, 61, 27, 30)),
}


def _clean(cell: str) -> str:
    cell = re.sub(r"\\tabucline\[[^]]*\]\{-\}|\\hline", "", cell)
    return cell.replace("$", "").replace("\\!", "").replace("\\\\", "").replace(" ", "").strip()


def parse_element(n: int, tok: str) -> list[int]:
    """Carrier indices named by one printed token (two for a ±x token)."""
    if tok == "0":
        return [n]
    signs = [1]
    if tok.startswith("\\pm"):
        signs, tok = [-1, 1], tok[3:]
    elif tok.startswith("-"):
        signs, tok = [-1], tok[1:]
    if tok == "1":
        e = 0
    elif tok == "a":
        e = 1
    else:
        m = re.fullmatch(r"a\^\{?(\d+)\}?", tok)
        assert m, tok
        e = int(m.group(1))
    return [index(n, s, e) for s in signs]


def parse_cell(n: int, cell: str) -> set[int]:
    cell = _clean(cell)
    m = re.fullmatch(r"(H\^\*|H)?(?:-|\\setminus)?\\\{(.*)\\\}", cell)
    assert m, cell
    listed = set()
    for tok in m.group(2).split(","):
        listed.update(parse_element(n, tok))
    if m.group(1) == "H":
        return set(range(2 * n + 1)) - listed
    if m.group(1) == "H^*":
        return set(range(2 * n + 1)) - listed - {n}
    return listed


def load_printed(stem: str) -> tuple[int, tuple, dict[tuple[int, int], set[int]]]:
    """Cells of a printed table keyed by (row index, column index)."""
    n, t = PRINTED[stem]
    text = (DATA / f"{stem}.tex").read_text().replace("\n", " ")
    lines = [ln for ln in text.split("\\\\") if "&" in ln]
    header = [_clean(c) for c in lines[0].split("&")]
    cols = [parse_element(n, c)[0] for c in header[1:]]
    cells = {}
    for line in lines[1:]:
        parts = line.split("&")
        row = parse_element(n, _clean(parts[0]))[0]
        for col, cell in zip(cols, parts[1:]):
            cells[(row, col)] = parse_cell(n, cell)
    return n, t, cells


def mask_to_set(mask: int) -> set[int]:
    return {i for i in range(mask.bit_length()) if mask >> i & 1}


@pytest.fixture(params=sorted(PRINTED))
def printed_table(request):
    return (request.param,) + load_printed(request.param)
