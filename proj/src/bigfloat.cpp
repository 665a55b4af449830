#include "stokes/bigfloat.hpp"

#include <cmath>
#include <cstdlib>

namespace stokes {

namespace {

long initial_bits() {
    long digits = 50;
    if (const char* env = std::getenv("STOKES_GATE_PRECISION")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 10 && v <= 100000) digits = v;
    }
    return digits_to_bits(digits);
}

thread_local long g_bits = 0;

}  // namespace

long digits_to_bits(long digits) {
    return static_cast<long>(std::ceil(digits * 3.3219280948873626)) + 32;
}

long working_precision_bits() {
    if (g_bits == 0) g_bits = initial_bits();
    return g_bits;
}

void set_working_precision_bits(long bits) {
    g_bits = bits < 24 ? 24 : bits;
}

}  // namespace stokes
