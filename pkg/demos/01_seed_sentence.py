"""
From a familiar sentence to new words
=====================================

Break a Telugu seed sentence into words, syllables and phonemes, then
find lexicon words a learner can already read.
"""

from idont.script import (
    candidate_words,
    decompose_sentence,
    load_lexicon,
    load_profile,
    render,
)

te = load_profile("te")
lexicon = load_lexicon("te", te)

# the seed sentence and its decomposition
tree = decompose_sentence("కాలం మారింది", te)
for word in tree.words:
    chain = " + ".join(render(s) for s in word.syllables)
    phonemes = " ".join(p.id for p in word.phonemes)
    print(f"{render(word)}: {chain}  /{phonemes}/")

# after two lessons the learner knows four units
learnt = ["క", "ల", "ు", "ఊ"]
print("readable:", ", ".join(render(w) for w in candidate_words(learnt, lexicon, te)))
