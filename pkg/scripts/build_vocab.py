"""Regenerates src/moledit/data/vocabulary.tsv.

Kept as a script so weight/classification edits stay reviewable in one place.
Run from the repo root: python scripts/build_vocab.py
"""

from pathlib import Path

# (surface, class, hydro weight). Hydrocarbon-like tokens carry positive
# weights, hydrogen-bonding donors/acceptors negative ones; structural
# punctuation and locants are zero.

PUNCTUATION = ["-", ",", "(", ")", "[", "]", " ", "'"]

STEREO = ["R", "S", "E", "Z", "cis", "trans", "rel"]

RING_LOCANTS = ["a", "b", "aH", "bH", "cH"]

ELEMENTS = ["H"]

MULTIPLIERS = ["di", "tri", "bis", "tris", "tetrakis"]

CHARGE = [
    ("ium", -1.0),
    ("ylium", 0.1),
    ("oxonium", -4.8),
    ("uide", -1.0),
]

# Alkane stems: weight grows with chain length.
STEMS = [
    ("meth", 0.5), ("eth", 1.0), ("prop", 1.5), ("but", 2.0),
    ("pent", 2.5), ("hex", 3.0), ("hept", 3.5), ("oct", 4.0),
    ("non", 4.5), ("dec", 5.0), ("undec", 5.5), ("dodec", 6.0),
    ("tridec", 6.5), ("tetradec", 7.0), ("pentadec", 7.5),
    ("hexadec", 8.0), ("heptadec", 8.5), ("octadec", 9.0), ("nonadec", 9.5),
    ("icos", 10.0),
]

GROUPS = [
    # hydrocarbon suffixes / connectors
    ("yl", 0.2), ("ylidene", 0.1), ("ylidyne", 0.1),
    ("ane", 0.3), ("ene", 0.3), ("yne", 0.2), ("an", 0.2), ("en", 0.2),
    ("yn", 0.2), ("dien", 0.3), ("trien", 0.3),
    ("cyclo", 0.3), ("spiro", 0.3), ("tert", 0.4), ("iso", 0.2),
    ("sec", 0.2), ("neo", 0.2),
    # carbocycles
    ("phen", 1.7), ("phenyl", 1.9), ("phenoxy", 1.2), ("benz", 1.7),
    ("benzo", 1.8), ("benzyl", 1.9), ("trityl", 4.4),
    ("naphthalen", 2.8), ("anthracen", 3.7), ("phenanthren", 3.7),
    ("pyren", 4.0), ("perylen", 4.5), ("chrysen", 4.2), ("coronen", 5.0),
    ("fluoranthen", 4.0), ("fluoren", 3.4), ("inden", 2.2), ("indan", 2.3),
    ("azulen", 2.6), ("heptalen", 2.9), ("biphenylen", 3.3),
    ("acenaphthylen", 3.2), ("picen", 4.4), ("ovalen", 5.5),
    # halogens
    ("fluoro", 0.2), ("chloro", 0.7), ("bromo", 0.9), ("iodo", 1.1),
    ("fluor", 0.2), ("chlor", 0.6), ("brom", 0.8), ("iod", 1.0),
    # oxygen groups
    ("ol", -1.1), ("one", -0.9), ("al", -0.8), ("oxo", -0.9), ("oxy", -0.5),
    ("oxa", -0.5), ("hydroxy", -1.1), ("hydro", 0.1), ("peroxy", -1.0),
    ("oate", -0.8), ("oyl", -0.6),
    ("oic acid", -1.0), ("ic acid", -1.0), ("ous acid", -1.0),
    ("ylic acid", -1.0), ("carboxylic acid", -1.0), ("carbox", -0.5),
    ("acet", -0.3),
    ("carbo", -0.2), ("carbon", -0.2), ("carbaldehyde", -0.8),
    ("carbonitrile", -0.7), ("formyl", -0.7), ("formamido", -1.6),
    # nitrogen groups
    ("amine", -1.2), ("amino", -1.2), ("amido", -1.5), ("amide", -1.5),
    ("imine", -1.1), ("imino", -1.1), ("imide", -1.4), ("imid", -1.3),
    ("amidino", -1.7), ("guanidino", -2.0), ("anilino", -0.6),
    ("nitro", -0.3), ("nitroso", -0.4), ("nitrile", -0.6),
    ("azo", -0.4), ("azido", -0.5), ("cyano", -0.6),
    ("urea", -1.5), ("ureido", -1.6),
    ("hydrazin", -1.6), ("hydrazid", -1.8), ("hydrazon", -4.0),
    ("carbamoyl", -1.4), ("carbamic acid", -3.8), ("amoyl", -3.5),
    ("benzamido", -1.0), ("benzoyl", -0.3),
    # sulfur groups
    ("thiol", -0.4), ("thio", -0.3), ("thion", -0.4), ("mercapto", -0.4),
    ("sulfanyl", -0.4), ("sulfanylidene", -0.4),
    ("sulfon", -1.6), ("sulfonato", -2.4), ("sulfonio", -2.0),
    ("sulfin", -3.0), ("sulfinam", -5.0), ("sulfinato", -5.5),
    ("sulfo", -4.5), ("sulfamoyl", -1.8),
    ("sulfate", -2.3), ("sulfite", -2.1), ("disulfate", -2.7),
    # phosphorus and friends
    ("phospho", -6.0), ("phosphonato", -6.5),
    ("phosphate", -5.8), ("phosphite", -5.4), ("diphosphate", -6.2),
    ("phosphonous acid", -2.2), ("phosphoroso", -2.0),
    ("phosphanyl", -1.2), ("arsanyl", -1.0), ("stibanyl", -0.9),
    ("boranyl", -0.3), ("silyl", 0.3), ("germyl", 0.3), ("stannyl", 0.4),
    # chalcogen oxyanion family (used by embedding-analogy drills)
    ("selenate", -2.0), ("selenite", -1.9),
    ("tellurate", -1.8), ("tellurite", -1.7),
    ("selanyl", -0.5), ("tellanyl", -0.4),
    # N-heterocycles
    ("pyridin", -0.6), ("pyridazin", -0.9), ("pyrimidin", -0.9),
    ("pyrazin", -0.9), ("pyrazol", -0.5), ("imidazol", -0.7),
    ("triazol", -1.0), ("triazolo", -1.0), ("tetrazol", -1.3),
    ("indol", -0.3), ("isoindol", -0.3), ("isoindolo", -0.3),
    ("indolizin", -0.5), ("indazol", -0.6), ("purin", -1.2),
    ("quinolin", -0.4), ("isoquinolin", -0.4), ("quinolizin", -0.5),
    ("quinoxalin", -0.7), ("quinazolin", -0.7), ("cinnolin", -0.7),
    ("phthalazin", -0.7), ("naphthyridin", -0.8), ("pteridin", -1.2),
    ("carbazol", -0.1), ("acridin", -0.2), ("perimidin", -0.6),
    ("phenanthridin", -0.3), ("phenanthrolin", -0.6), ("phenazin", -0.5),
    ("phenothiazin", -0.4), ("phenoxazin", -0.5),
    ("pyrrol", -0.4), ("pyrrolidin", -0.5), ("pyrrolizin", -0.5),
    ("piperidin", -0.4), ("piperazin", -0.8), ("morpholin", -0.9),
    ("thiomorpholin", -0.7), ("azetidin", -0.6), ("aziridin", -0.7),
    ("azepan", -0.5), ("azocan", -0.5), ("azonan", -0.5), ("azecan", -0.5),
    ("azepin", -0.5), ("azocin", -0.5),
    # O/S heterocycles
    ("furan", -0.4), ("pyran", -0.5), ("chromen", -0.3),
    ("isochromen", -0.3), ("chroman", -0.3), ("isochroman", -0.3),
    ("xanthen", -0.1), ("thianthren", -0.1), ("phenoxathiin", -0.2),
    ("thiophen", 0.0), ("selenophen", 0.0), ("tellurophen", 0.0),
    ("thiopyran", -0.2), ("oxiran", -0.6), ("oxetan", -0.6),
    ("oxolan", -0.6), ("oxan", -0.6), ("oxepan", -0.6),
    ("thiiran", -0.3), ("thietan", -0.3), ("thiolan", -0.3),
    ("thian", -0.3), ("thiepan", -0.3),
    ("dioxol", -0.9), ("dioxin", -0.9), ("oxazol", -0.8),
    ("isoxazol", -0.8), ("thiazol", -0.6), ("isothiazol", -0.6),
    ("thiadiazol", -0.9), ("oxadiazol", -1.0),
    ("oxazin", -0.9), ("thiazin", -0.7),
    # misc heteroatom ring stems
    ("silol", 0.1), ("borol", -0.1), ("phosphol", -0.6), ("arsol", -0.5),
    ("stibol", -0.4), ("bismol", -0.4), ("germol", 0.1), ("stannol", 0.1),
    ("plumbol", 0.1), ("selenol", -0.5), ("tellurol", -0.4),
    # common trivial/industrial stems
    ("vinyl", 0.8), ("allyl", 1.0), ("styren", 2.0), ("toluen", 1.8),
    ("xylen", 2.0), ("cumen", 2.2), ("mesityl", 2.4),
    ("glycol", -1.8), ("glycer", -2.0), ("malon", -1.0), ("succin", -1.0),
    ("glutar", -1.0), ("adip", -0.9), ("fumar", -1.0), ("lact", -1.2),
    ("oxal", -1.2), ("citr", -1.3), ("salicyl", -0.8), ("vanill", -1.0),
    ("cinnam", 0.5), ("stear", 7.0), ("palmit", 6.5), ("laur", 4.8),
    ("myrist", 5.8),
    # ring-fusion prefixes
    ("naphtho", 2.8), ("furo", -0.4), ("pyrido", -0.6), ("pyrimido", -0.9),
    ("imidazo", -0.7), ("pyrazolo", -0.5), ("thieno", 0.0),
    ("oxazolo", -0.8), ("thiazolo", -0.6),
    # single-letter fallbacks for irregular endings
    ("e", 0.0), ("o", 0.0),
]


def main() -> None:
    lines = ["# surface<TAB>class<TAB>weight  (specials appended by the loader)"]
    seen = set()

    def emit(surface: str, cls: str, weight: float = 0.0) -> None:
        if surface in seen:
            raise SystemExit(f"duplicate surface {surface!r}")
        seen.add(surface)
        field = "" if weight == 0.0 else f"{weight:g}"
        lines.append(f"{surface}\t{cls}\t{field}")

    for i in range(1, 101):
        emit(str(i), "Locant")
    emit("N", "Locant")
    for s in PUNCTUATION:
        emit(s, "Punctuation")
    for s in STEREO:
        emit(s, "Stereo")
    for s in RING_LOCANTS:
        emit(s, "RingLocant")
    for s in ELEMENTS:
        emit(s, "Element")
    for s in MULTIPLIERS:
        emit(s, "Multiplier")
    for s, w in CHARGE:
        emit(s, "Charge", w)
    for s, w in STEMS:
        emit(s, "Group", w)
    for s, w in GROUPS:
        emit(s, "Group", w)

    out = Path(__file__).resolve().parents[1] / "src" / "moledit" / "data" / "vocabulary.tsv"
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {out} with {len(seen)} entries")


if __name__ == "__main__":
    main()
