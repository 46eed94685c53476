"""Strings, masks, and wildcard matching on a five-string toy dictionary.

Run: python demos/01_matching_basics.py
"""

from pmdm import (
    Dictionary,
    MaskSet,
    MaskedString,
    count_matches,
    mask_apply,
    matches,
    mismatch_set,
)

dictionary = Dictionary(["abab", "abbb", "aaaa", "bbab", "abaa"])
query = "abab"

print("dictionary:", list(dictionary))
print("query:     ", query)
print()

# Masking replaces chosen 1-based positions with a wildcard that matches
# every symbol.
for positions in ([], [2], [1, 2, 3, 4]):
    masked = mask_apply(query, MaskSet(positions))
    print(f"mask {positions!s:12} -> {masked.render()}"
          f"   matches {count_matches(dictionary, masked)} of {dictionary.size}")
print()

# The mismatch set of two strings is the minimal mask making them match.
for entry in dictionary:
    needed = mismatch_set(query, entry)
    masked = mask_apply(query, needed)
    assert matches(masked, entry)
    print(f"{query} vs {entry}: differ at {list(needed.positions)!s:10}"
          f" -> {masked.render()} matches it")
print()

# Parsing accepts the wildcard glyph directly.
pattern = MaskedString.parse("a?a?")
print("pattern a?a? matches", count_matches(dictionary, pattern), "entries:",
      [s for s in dictionary if matches(pattern, s)])
