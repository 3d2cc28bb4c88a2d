"""Fricke traces frozen from PARI/GP (mfatkininit on mfinit([N, k], space)).

FULL_*: trace of W_N on the full cusp space S_k(N); NEW_K2: on the new subspace.
SMALL holds levels 1, 2, 3 at k > 2."""

FULL_K2 = {
    5: 0, 6: 0, 7: 0, 8: 0, 9: 0, 10: 0, 11: -1, 12: 0, 13: 0, 14: -1, 15: -1, 16: 0, 17: -1,
    18: 0, 19: -1, 20: -1, 21: -1, 22: 0, 23: -2, 24: -1, 25: 0, 26: -2, 27: -1, 28: 0, 29: -2,
    30: -1, 31: -2, 32: -1, 33: -1, 34: -1, 35: -3, 36: -1, 37: 0, 38: -2, 39: -3, 40: -1, 41: -3,
    42: -1, 43: -1, 44: -2, 45: -1, 46: -1, 47: -4, 48: -1, 49: -1, 50: -2, 51: -3, 52: -1, 53: -2,
    54: -2, 55: -3, 56: -3, 57: -1, 58: 0, 59: -5, 60: -1, 61: -2, 62: -3, 63: -3, 64: -1, 65: -3,
    66: -3, 67: -1, 68: -3, 69: -3, 70: -1, 71: -6, 72: -1, 73: -1, 74: -4, 75: -3, 76: -2, 77: -3,
    78: -1, 79: -4, 80: -3, 81: -2, 82: -1, 83: -5, 84: -3, 85: -1, 86: -4, 87: -5, 88: -1, 89: -5,
    90: -3, 91: -3, 92: -2, 93: -1, 94: -3, 95: -7, 96: -3, 97: -1, 98: -3, 99: -3, 100: -1,
    101: -6, 102: -1, 103: -4, 104: -5, 105: -3, 106: -2, 107: -5, 108: -2, 109: -2, 110: -5,
    111: -7, 112: -1, 113: -3, 114: -3, 115: -3, 116: -5, 117: -3, 118: -2, 119: -9, 120: -3,
}

NEW_K2 = {
    5: 0, 6: 0, 7: 0, 8: 0, 9: 0, 10: 0, 11: -1, 12: 0, 13: 0, 14: -1, 15: -1, 16: 0, 17: -1,
    18: 0, 19: -1, 20: -1, 21: -1, 22: 0, 23: -2, 24: -1, 25: 0, 26: -2, 27: -1, 28: 0, 29: -2,
    30: -1, 31: -2, 32: -1, 33: -1, 34: -1, 35: -3, 36: -1, 37: 0, 38: -2, 39: -3, 40: -1, 41: -3,
    42: -1, 43: -1, 44: -1, 45: -1, 46: -1, 47: -4, 48: -1, 49: -1, 50: -2, 51: -3, 52: -1, 53: -2,
    54: -2, 55: -3, 56: -2, 57: -1, 58: 0, 59: -5, 60: 0, 61: -2, 62: -3, 63: -3, 64: -1, 65: -3,
    66: -3, 67: -1, 68: -2, 69: -3, 70: -1, 71: -6, 72: -1, 73: -1, 74: -4, 75: -3, 76: -1, 77: -3,
    78: -1, 79: -4, 80: -2, 81: -2, 82: -1, 83: -5, 84: -2, 85: -1, 86: -4, 87: -5, 88: -1, 89: -5,
    90: -3, 91: -3, 92: 0, 93: -1, 94: -3, 95: -7, 96: -2, 97: -1, 98: -3, 99: -2, 100: -1,
    101: -6, 102: -1, 103: -4, 104: -3, 105: -3, 106: -2, 107: -5, 108: -1, 109: -2, 110: -5,
    111: -7, 112: -1, 113: -3, 114: -3, 115: -3, 116: -3, 117: -3, 118: -2, 119: -9, 120: -2,
}

HIGHER = {
    (5, 4): 1, (5, 6): -1, (5, 8): 1, (5, 12): 1, (6, 4): 1, (6, 6): -1, (6, 8): 1, (6, 12): 1,
    (7, 4): 1, (7, 6): -1, (7, 8): 1, (7, 12): 1, (11, 4): 2, (11, 6): -2, (11, 8): 2, (11, 12): 2,
    (13, 4): 1, (13, 6): -1, (13, 8): 1, (13, 12): 1, (17, 4): 2, (17, 6): -2, (17, 8): 2,
    (23, 4): 3, (23, 6): -3, (23, 8): 3, (30, 4): 2, (30, 6): -2, (30, 8): 2,
}

SMALL = {
    (1, 4): 0, (1, 6): 0, (1, 8): 0, (1, 10): 0, (1, 12): 1, (1, 14): 0, (1, 16): 1, (1, 24): 2,
    (2, 4): 0, (2, 6): 0, (2, 8): 1, (2, 10): -1, (2, 12): 0, (2, 14): 0, (2, 16): 1, (2, 24): 1,
    (3, 4): 0, (3, 6): -1, (3, 8): 1, (3, 10): 0, (3, 12): 1, (3, 14): -1, (3, 16): 0,
}
