from .errors import LabelError


def make_label(name: str) -> str:
    """Condense a journal name into a Pajek vertex label.

    Each whitespace-separated token keeps only its ASCII letters and digits,
    with the first letter upper-cased and the rest lower-cased:
    ``"J Urban Plan D-Asce"`` becomes ``"JUrbanPlanDasce"``.
    """
    parts = []
    for token in name.split():
        kept = "".join(c for c in token if c.isascii() and c.isalnum())
        first = next((i for i, c in enumerate(kept) if c.isalpha()), None)
        kept = kept.lower()
        if first is not None:
            kept = kept[:first] + kept[first].upper() + kept[first + 1:]
        parts.append(kept)
    label = "".join(parts)
    if not label:
        raise LabelError(f"journal name {name!r} has no letters or digits to form a label")
    return label
