#include "phast/ell_table.hpp"

namespace phast {

EllTable ell_for_seed_bits(int s_bits, Variant variant) {
    if (s_bits == 8) {
        return EllTable{{-50171, 59462, 109868, 141865, 163564, 181092, 192852}};
    }
    if (s_bits >= 11 && variant == Variant::MUL) {
        return EllTable{{-63000, 69496, 123197, 147274, 164471, 179677, 184910}};
    }
    // Linear ramp through the tuned curve's ell(2) and ell(7).
    int64_t first, lo, hi;
    if (s_bits <= 5) {
        first = -125171;
        lo = 31908;
        hi = 164878;
    } else {
        first = -50171;
        lo = 59462;
        hi = 192852;
    }
    EllTable t;
    t.values[0] = first;
    for (int s = 2; s <= 7; ++s)
        t.values[s - 1] = lo + (s - 2) * (hi - lo) / 5;
    return t;
}

}  // namespace phast
