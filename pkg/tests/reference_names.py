"""IUPAC names used in round-trip and coverage tests (shared fixture data)."""

# Benchmark source molecules for edit evaluation.
BENCHMARK_NAMES = [
    "3,3-bis(aminomethyl)pentane-1,5-diol",
    "1-(3-hydroxypropyl)-N-(1-methoxybutan-2-yl)pyrazole-4-sulfonamide",
    "4-chloro-N-[2-[[2-(4-fluorophenyl)acetyl]amino]ethyl]-1,3-thiazole-5-carboxamide",
    "1-[(1S)-1-(3-fluorophenyl)propyl]-3-iodoindole",
    "4-(4-fluorophenyl)-N-[(1R,2R)-2-methylcyclohexyl]piperazine-1-carbothioamide",
    "N'-(3-ethyl-4-oxophthalazine-1-carbonyl)-4-methyl-2-phenyl-1,3-thiazole-5-carbohydrazide",
    "(E)-2-methoxy-3-methylhex-4-en-1-ol",
    "N-methyl-1-[2-(4-methylthiadiazol-5-yl)-1,3-thiazol-4-yl]methanamine",
    "2-[(7-methyl-[1,2,4]triazolo[1,5-a]pyridin-2-yl)amino]ethylurea",
    "4-[[2-(2-oxopyridin-1-yl)acetyl]amino]benzoic acid",
    "[6-prop-2-enoxy-4-(trifluoromethyl)pyridin-2-yl]hydrazine",
    "4-(2-methylphenyl)sulfonylpiperidin-3-amine",
    "3-[ethyl(2-methylpropyl)amino]propane-1-thiol",
    "6-methoxy-4-N-methyl-4-N-[(2-methylfuran-3-yl)methyl]pyrimidine-4,5-diamine",
    "3-phenylmethoxy-5-(trifluoromethoxy)quinoline-2-carboxylic acid",
    "3-[4-[acetamido-[3-methoxy-4-[(2-methylphenyl)carbamoylamino]phenyl]methyl]piperidin-1-yl]-3-phenylpropanoic acid",
    "(3R)-3-[[(2S)-2-[benzyl(methyl)amino]butanoyl]amino]pyrrolidine-1-carboxamide",
    "6-cyclobutyl-2-N-[3-(1-ethylsulfinylethyl)phenyl]-5-(trifluoromethyl)pyrimidine-2,4-diamine",
    "6-fluoro-2-(4-phenylpyridin-2-yl)-1H-benzimidazole",
    "4-chloro-3-(2-oxo-1,3-dihydroindol-5-yl)benzonitrile",
    "1-(6-tert-butylpyridazin-3-yl)-N-methyl-N-[(2-methyl-1,3-oxazol-4-yl)methyl]azetidin-3-amine",
    "2-[(4aR,8aS)-3,4,4a,5,6,7,8,8a-octahydro-1H-isoquinolin-2-yl]-N-(2,4-dimethoxyphenyl)acetamide",
    "2-[2-(2,4-dichlorophenoxy)ethoxy]-4-methoxybenzoic acid",
    "(2Z)-2-[(1,7-dimethylquinolin-1-ium-2-yl)methylidene]-1-ethyl-7-methylquinoline",
    "N'-[(3S)-1-[[3-(2,4-dichlorophenyl)phenyl]methyl]-2-oxoazepan-3-yl]-3-(2-methylpropyl)-2-prop-2-enylbutanediamide",
]

# Additional names exercising rarer token classes.
OTHER_NAMES = [
    "2-acetyloxybenzoic acid",
    "2-chloropentane",
    "ethylbenzene",
    "hexaethylbenzene",
    "3,3-bis(aminomethyl)pentane-1,5-disulfinic acid",
    "3,3-bis(aminomethyl)-1-heptadecylpentane-1,5-diol",
]

ALL_NAMES = BENCHMARK_NAMES + OTHER_NAMES
