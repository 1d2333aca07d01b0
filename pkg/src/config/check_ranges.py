"""
Default ranges for the identity suite.

Each range is chosen so the corresponding check finishes in about a second;
the CLI `check` command can override every one of them.
"""
from typing import Dict, Tuple

# Lemma 1: (1+(1+x)(y+z+yz))^n expanded two ways
LEMMA1_MAX_N: int = 6

# Corollary 2: exhaustive n, with 0 <= a, b <= n
COROLLARY2_MAX_N: int = 8

# Lemma 3: arities and maximal multi-index entry
LEMMA3_ARITIES: Tuple[int, ...] = (1, 2)
LEMMA3_MAX_ENTRY: int = 3

# Lemmas 4, 20, 21: monomial pairs, max exponent per arity
MONOMIAL_PAIR_MAX_EXP: Dict[int, int] = {
    1: 4,
    2: 4,
}

# Lemma 100 / 101: exhaustive a, b, c
LEMMA100_MAX: int = 6
LEMMA101_MAX: int = 5

# Lemma 98: det M^(a)(t) = t^C(k+1,2)
LEMMA98_MAX_A: int = 3
LEMMA98_MAX_K: int = 5

# Lemma 102: det M~^(a,k)(x,y,z) = x^(a(k+1)) (xy+z)^C(k+1,2)
LEMMA102_MAX_A: int = 3
LEMMA102_MAX_K: int = 4

# Lemma 103: det N^(a,k) > 0 and closed form
LEMMA103_MAX_A: int = 4
LEMMA103_MAX_K: int = 5

# Lemma 104: random coefficient vectors per (a, k)
LEMMA104_MAX_A: int = 3
LEMMA104_MAX_K: int = 4
LEMMA104_SAMPLES: int = 20

# Randomized theorem suites
RANDOM_SAMPLES: int = 200
RANDOM_MAX_ARITY: int = 2
RANDOM_MAX_EXP: int = 3
RANDOM_MAX_TERMS: int = 4
RANDOM_COEFF_RANGE: Tuple[int, int] = (-5, 5)

# Fubini example
FUBINI_MAX_K: int = 8

# Weyl relations
RELATIONS_MAX_ARITY: int = 3

# Random monomial Gram matrices (Sylvester certificate)
GRAM_SAMPLES: int = 50
GRAM_MAX_EXP: int = 3
GRAM_MAX_BASIS: int = 12
