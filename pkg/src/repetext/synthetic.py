"""Deterministic synthetic texts with planted repetition and entity clusters.

The generated "mini-novel" has short paragraphs, recurring stock phrases,
a few long motif sentences repeated verbatim, and five families of names
that are only co-mentioned within their own family. A handful of hub
names appear on their own next to different families, so they connect
the families only under the one-paragraph-wider association window.
"""
from __future__ import annotations

import random

CLUSTERS: dict[str, list[tuple[str, list[str]]]] = {
    "Paris": [("Paris", []), ("Vincent van Gogh", ["Van Gogh"]), ("Maupassant", []), ("Louvre", []), ("Seine", [])],
    "Homeric": [("Achilles", []), ("Odysseus", []), ("Helen", []), ("Troy", []), ("Homer", []), ("Sirens", [])],
    "Rome": [("Rome", []), ("Julius Caesar", ["Caesar"]), ("Virgil", []), ("Colosseum", []), ("Tiber", [])],
    "Spanish": [("Madrid", []), ("El Greco", []), ("Prado", []), ("La Mancha", []), ("Cervantes", [])],
    "Gallery": [("National Gallery", []), ("Rembrandt", []), ("Nightwatch", []), ("Vermeer", [])],
}
HUBS = [("Dylan Thomas", []), ("William de Kooning", ["de Kooning"])]
REPRESENTATIVE = {"Paris": "Paris", "Homeric": "Odysseus", "Rome": "Rome", "Spanish": "Madrid", "Gallery": "Rembrandt"}

STOCK_PHRASES = [
    "now that I think about it",
    "There would appear to be no",
    "doubtless I would not have",
    "As a matter of fact the",
    "When one comes right down to it",
    "But be that as it may",
    "And to tell the truth I",
    "God the things men used to do",
]
MOTIFS = [
    "Was it really some other person I was so anxious to discover when I did all of that looking ?",
    "Although doubtless when I say they are half empty I should really be saying they are half filled .",
    "Still I find it extraordinary that young men died there in a war that long ago .",
]
FILLER = (
    "the a of and to in that it was is I my had have not for on with as at by one there this "
    "which would be so all when or some other person time house beach still even perhaps again "
    "once painting music window books basement car road evening morning rain light sea "
    "remember think wonder say said find found looking walked drove read wrote left came "
    "little long young old empty filled half rather quite certainly doubtless really very "
    "something nothing anything everything somebody nobody world language fact name names "
    "way place places thing things picture pictures letter letters afternoon night summer"
).split()


def _sentence(rng: random.Random, names: list[str]) -> str:
    words = [rng.choice(FILLER) for _ in range(rng.randint(4, 12))]
    for name in names:
        words.insert(rng.randint(0, len(words)), name)
    words[0] = words[0][:1].upper() + words[0][1:]
    return " ".join(words) + rng.choice([".", ".", ".", "?"])


def mini_novel(n_paragraphs: int = 400, seed: int = 7) -> str:
    rng = random.Random(seed)
    families = list(CLUSTERS)
    focus = "Homeric"
    paragraphs = []
    for _ in range(n_paragraphs):
        r = rng.random()
        if r < 0.12:
            focus = "Rome" if focus == "Homeric" else "Homeric"
        elif r < 0.2:
            focus = rng.choice(families)
        names: list[str] = []
        if rng.random() < 0.05:
            names = [rng.choice(HUBS)[0]]
        elif rng.random() < 0.6:
            members = CLUSTERS[focus]
            picks = rng.sample(members, k=min(len(members), rng.choice([1, 1, 2, 2, 3])))
            names = [rng.choice([canon, *aliases]) for canon, aliases in picks]
        parts = [_sentence(rng, names)]
        if rng.random() < 0.75:
            phrase = rng.choice(STOCK_PHRASES)
            tail = _sentence(rng, [])
            parts.append(phrase[:1].upper() + phrase[1:] + " " + tail[:1].lower() + tail[1:])
        if rng.random() < 0.04:
            parts.append(rng.choice(MOTIFS))
        paragraphs.append(" ".join(parts))
    return "\n\n".join(paragraphs) + "\n"


def mini_gazetteer() -> list[dict]:
    records = []
    for members in CLUSTERS.values():
        for canonical, aliases in members:
            records.append({"canonical": canonical, "aliases": aliases, "category": "other"})
    for canonical, aliases in HUBS:
        records.append({"canonical": canonical, "aliases": aliases, "category": "person"})
    return records


def mini_labels() -> dict[str, str]:
    return {entity: family for family, entity in REPRESENTATIVE.items()}


def random_token_paragraphs(
    rng: random.Random, alphabet: int, length: int, n_paragraphs: int, plant: int = 0
) -> list[list[str]]:
    """Random word tokens split into paragraphs, optionally with copied stretches.

    ``plant`` copies that many random stretches (up to 40 tokens) to
    random places, so long repeats exist beyond what chance produces.
    """
    words = [f"w{rng.randrange(alphabet)}" for _ in range(length)]
    for _ in range(plant):
        size = rng.randint(2, min(40, max(2, length // 2)))
        if size >= length:
            break
        src = rng.randrange(length - size + 1)
        dst = rng.randrange(length - size + 1)
        words[dst : dst + size] = words[src : src + size]
    n_paragraphs = max(1, min(n_paragraphs, length))
    cuts = sorted(rng.sample(range(1, length), n_paragraphs - 1)) if n_paragraphs > 1 else []
    bounds = [0, *cuts, length]
    return [words[a:b] for a, b in zip(bounds, bounds[1:])]
