# Dicke-path dimension guard: (N+1)x(N+1) dense complex matrices
MAX_N_ATOMS = 2000

# 2^N amplitudes in the product basis
PRODUCT_MAX_N_ATOMS = 14

NORM_TOLERANCE = 1e-9

# degeneracy threshold on |<J>| and on its transverse part is this times N
DEGENERACY_SCALE = 1e-10

# negative primed variances within this window (times max(1, j(j+1))) clamp to 0
VARIANCE_CLAMP = 1e-10

CSS_TOLERANCE = 1e-9

CSV_FLOAT_DECIMALS = 6
